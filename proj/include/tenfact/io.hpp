#pragma once

// JSON formats: .cat.json (category data), .grp.json (groups) and
// .emb.json (embeddings, with source/target paths relative to the file).

#include "tenfact/category.hpp"
#include "tenfact/cohomology.hpp"
#include "tenfact/factor.hpp"
#include "tenfact/groups.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace tenfact {

using Json = nlohmann::ordered_json;

// Throws kMalformedInput with line and column on syntax errors.
Json parse_json(const std::string& text, const std::string& origin = "<input>");
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

Json category_to_json(const CategoryData& d);
// Throws kMalformedInput on schema errors.
CategoryData category_from_json(const Json& j);
CategoryData load_category(const std::filesystem::path& path);

Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j, std::uint64_t seed = 0x5eed);
FiniteGroup load_group(const std::filesystem::path& path, std::uint64_t seed = 0x5eed);

Json embedding_to_json(const std::string& source, const std::string& target,
                       const std::vector<Index>& map);
// Loads source and target relative to the embedding file. Checks the
// structural invariants (kInvalidEmbedding).
Embedding load_embedding(const std::filesystem::path& path);

// Integers that fit in int64 become numbers, larger ones strings.
Json integer_to_json(const Integer& v);
Json integers_to_json(const std::vector<Integer>& v);

// Nonzero values as [{"args": [labels], "value": "p/q"}].
Json qz_cochain_to_json(const FiniteGroup& g, const QZCochain& omega);
Json int_cochain_to_json(const FiniteGroup& g, const IntCochain& z);

// Element list given as comma-separated labels or indices.
std::vector<Index> parse_elements(const FiniteGroup& g, const std::string& spec);

}  // namespace tenfact
