#include "tenfact/io.hpp"

#include "tenfact/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace tenfact {

namespace fs = std::filesystem;

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorCode::kMalformedInput, origin + ":" + std::to_string(line) + ":" +
                                         std::to_string(column) + ": malformed JSON (byte " +
                                         std::to_string(e.byte) + ")");
  }
}

Json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kMalformedInput, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

void write_json_file(const fs::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kMalformedInput, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  fail(ErrorCode::kMalformedInput, what);
}

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    schema_error(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

Json category_to_json(const CategoryData& d) {
  Json j;
  j["simples"] = d.simples;
  j["unit"] = d.unit;
  j["dual"] = d.dual;
  Json fusion = Json::array();
  for (const FusionEntry& e : d.fusion) fusion.push_back({e.product, e.left, e.right, e.mult});
  j["fusion"] = fusion;
  j["cartan"] = d.cartan;
  if (d.dual_d) j["dualD"] = *d.dual_d;
  if (!d.metadata.empty()) j["metadata"] = d.metadata;
  return j;
}

CategoryData category_from_json(const Json& j) {
  CategoryData d;
  d.simples = get_field<std::vector<std::string>>(j, "simples");
  d.unit = get_field<Index>(j, "unit");
  d.dual = get_field<Permutation>(j, "dual");
  for (const auto& q : get_field<std::vector<std::vector<std::int64_t>>>(j, "fusion")) {
    if (q.size() != 4) schema_error("fusion entries are [x, y, z, mult]");
    for (std::size_t i = 0; i < 3; ++i)
      if (q[i] < 0) schema_error("negative index in fusion entry");
    if (q[3] < 0) schema_error("negative fusion multiplicity");
    d.fusion.push_back({static_cast<Index>(q[0]), static_cast<Index>(q[1]),
                        static_cast<Index>(q[2]), q[3]});
  }
  d.cartan = get_field<IntMatrix>(j, "cartan");
  if (j.contains("dualD") && !j.at("dualD").is_null()) d.dual_d = get_field<Permutation>(j, "dualD");
  if (j.contains("metadata")) d.metadata = get_field<std::map<std::string, std::string>>(j, "metadata");
  check_well_formed(d);
  canonicalize(d);
  return d;
}

CategoryData load_category(const fs::path& path) {
  try {
    return category_from_json(read_json_file(path));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kMalformedInput) throw;
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    fail(e.code(), path.string() + ": " + what);
  }
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["labels"] = g.labels();
  j["table"] = g.table();
  return j;
}

FiniteGroup group_from_json(const Json& j, std::uint64_t seed) {
  auto labels = get_field<std::vector<std::string>>(j, "labels");
  auto table = get_field<std::vector<std::vector<Index>>>(j, "table");
  return FiniteGroup::from_table(std::move(labels), std::move(table), seed);
}

FiniteGroup load_group(const fs::path& path, std::uint64_t seed) {
  return group_from_json(read_json_file(path), seed);
}

Json embedding_to_json(const std::string& source, const std::string& target,
                       const std::vector<Index>& map) {
  Json j;
  j["source"] = source;
  j["target"] = target;
  j["map"] = map;
  return j;
}

Embedding load_embedding(const fs::path& path) {
  const Json j = read_json_file(path);
  const fs::path base = path.parent_path();
  Embedding e;
  e.source = std::make_shared<const CategoryData>(
      load_category(base / get_field<std::string>(j, "source")));
  e.target = std::make_shared<const CategoryData>(
      load_category(base / get_field<std::string>(j, "target")));
  e.map = get_field<std::vector<Index>>(j, "map");
  check_embedding(e);
  return e;
}

Json integer_to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

Json integers_to_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const Integer& x : v) a.push_back(integer_to_json(x));
  return a;
}

namespace {

Json tuple_labels(const FiniteGroup& g, const std::vector<Index>& t) {
  Json a = Json::array();
  for (Index x : t) a.push_back(g.label(x));
  return a;
}

}  // namespace

Json qz_cochain_to_json(const FiniteGroup& g, const QZCochain& omega) {
  const CellIndex cells(g, omega.degree);
  Json a = Json::array();
  for (std::size_t c = 0; c < omega.values.size(); ++c) {
    if (omega.values[c] == 0) continue;
    a.push_back({{"args", tuple_labels(g, cells.decode(c))}, {"value", to_string(omega.values[c])}});
  }
  return a;
}

Json int_cochain_to_json(const FiniteGroup& g, const IntCochain& z) {
  const CellIndex cells(g, z.degree);
  Json a = Json::array();
  for (std::size_t c = 0; c < z.values.size(); ++c) {
    if (z.values[c] == 0) continue;
    a.push_back({{"args", tuple_labels(g, cells.decode(c))}, {"value", integer_to_json(z.values[c])}});
  }
  return a;
}

std::vector<Index> parse_elements(const FiniteGroup& g, const std::string& spec) {
  std::vector<Index> out;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (item.empty()) continue;
    Index found = g.find(item);
    if (found == FiniteGroup::npos) {
      const bool numeric = item.find_first_not_of("0123456789") == std::string::npos;
      if (!numeric) fail(ErrorCode::kMalformedInput, "unknown element '" + item + "'");
      found = std::stoul(item);
      if (found >= g.order()) fail(ErrorCode::kIndexOutOfRange, "element index " + item + " out of range");
    }
    out.push_back(found);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tenfact
