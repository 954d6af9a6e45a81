#include "foelner/io.hpp"

#include <cstdint>
#include <cstdio>

#include "foelner/errors.hpp"

namespace foelner {

Json to_json(const L2Vec& v) {
    Json j = Json::object();
    for (const auto& [w, a] : v.entries()) j[w.to_string()] = Json::array({a.real(), a.imag()});
    return j;
}

L2Vec l2vec_from_json(GroupDescriptor descriptor, const Json& j) {
    if (!j.is_object()) throw PreconditionError("L2 vector JSON must be an object");
    std::vector<L2Vec::Entry> entries;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_array() || value.size() != 2) {
            throw PreconditionError("amplitude for '" + key + "' must be [re, im]");
        }
        entries.emplace_back(parse_word(descriptor, key),
                             Complex(value[0].get<double>(), value[1].get<double>()));
    }
    return L2Vec::from_entries(descriptor, std::move(entries));
}

Json to_json(const SmallMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.size(); ++c) row.push_back(Json::array({m(i, c).real(), m(i, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

SmallMatrix small_matrix_from_json(const Json& j) {
    if (!j.is_array()) throw PreconditionError("matrix JSON must be an array of rows");
    SmallMatrix m(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != j.size()) throw PreconditionError("matrix must be square");
        for (std::size_t c = 0; c < j.size(); ++c) {
            const auto& z = j[i][c];
            if (!z.is_array() || z.size() != 2) throw PreconditionError("entries must be [re, im]");
            m(i, c) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

Json to_json(const Frame& e) {
    Json cols = Json::array();
    for (const auto& c : e.columns()) cols.push_back(to_json(c));
    return Json{{"group", e.descriptor().to_string()},
                {"ambient_radius", e.ambient_radius()},
                {"columns", std::move(cols)}};
}

std::string fingerprint(const Frame& e) {
    const std::string text = to_json(e).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace foelner
