#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "foelner/l2.hpp"
#include "foelner/small_matrix.hpp"

namespace foelner {

using Json = nlohmann::ordered_json;

// {"word": [re, im], ...} in shortlex order of the words.
Json to_json(const L2Vec& v);
L2Vec l2vec_from_json(GroupDescriptor descriptor, const Json& j);

// Row-major nested arrays of [re, im].
Json to_json(const SmallMatrix& m);
SmallMatrix small_matrix_from_json(const Json& j);

// {"group", "ambient_radius", "columns": [...]}
Json to_json(const Frame& e);

// FNV-1a 64 of the serialized frame, as 16 hex digits.
std::string fingerprint(const Frame& e);

}  // namespace foelner
