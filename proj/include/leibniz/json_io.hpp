#pragma once

#include "leibniz/algebra.hpp"
#include "leibniz/operators.hpp"
#include "leibniz/twolocal.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace leibniz {

using nlohmann::json;

/// Schema violation with the offending location, e.g. "brackets[2].terms[0]".
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& location, const std::string& message)
        : std::runtime_error(location + ": " + message)
    {
    }
};

namespace detail {

inline void require_fields(const json& obj, const std::string& where,
                           const std::vector<std::string>& required,
                           const std::vector<std::string>& optional = {})
{
    if (!obj.is_object())
        throw SchemaError(where, "expected an object");
    for (const auto& f : required)
        if (!obj.contains(f))
            throw SchemaError(where, "missing field '" + f + "'");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const auto& f : required)
            known = known || key == f;
        for (const auto& f : optional)
            known = known || key == f;
        if (!known)
            throw SchemaError(where, "unknown field '" + key + "'");
    }
}

inline Rational parse_scalar(const json& j, const std::string& where, bool normalize)
{
    if (!j.is_string())
        throw SchemaError(where, "scalar must be a \"p/q\" string");
    const std::string s = j.get<std::string>();
    const auto value = normalize ? parse_rational(s) : parse_rational_strict(s);
    if (!value)
        throw SchemaError(where, normalize ? "malformed scalar '" + s + "'"
                                           : "scalar '" + s + "' is not in canonical form");
    return *value;
}

inline std::size_t parse_index(const json& j, const std::string& where, std::size_t dim)
{
    if (!j.is_number_unsigned())
        throw SchemaError(where, "index must be a non-negative integer");
    const auto idx = j.get<std::size_t>();
    if (idx >= dim)
        throw SchemaError(where, "index " + std::to_string(idx) + " out of range for dim " +
                                     std::to_string(dim));
    return idx;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Family tags
// ---------------------------------------------------------------------------

inline json family_to_json(const FamilyTag& tag)
{
    json j;
    if (const auto* lt = std::get_if<LtTag>(&tag)) {
        j["kind"] = "Lt";
        j["n"] = lt->n;
        j["alphas"] = lt->alphas;
    } else if (const auto* r1 = std::get_if<R1Tag>(&tag)) {
        j["kind"] = "R1";
        j["n"] = r1->n;
    } else if (const auto* r2 = std::get_if<R2Tag>(&tag)) {
        j["kind"] = "R2";
        j["n"] = r2->n;
    } else if (const auto* mn = std::get_if<ModelNTag>(&tag)) {
        j["kind"] = "ModelN";
        j["m"] = mn->m;
    } else if (const auto* rm = std::get_if<RModelTag>(&tag)) {
        j["kind"] = "RModel";
        j["m"] = rm->m;
    }
    return j;
}

inline FamilyTag family_from_json(const json& j, std::size_t dim)
{
    if (!j.is_object() || !j.contains("kind"))
        throw SchemaError("family", "missing field 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Lt")
        detail::require_fields(j, "family", {"kind", "n", "alphas"});
    else if (kind == "R1" || kind == "R2")
        detail::require_fields(j, "family", {"kind", "n"});
    else if (kind == "ModelN" || kind == "RModel")
        detail::require_fields(j, "family", {"kind", "m"});
    const auto check_dim = [&](std::size_t expected) {
        if (expected != dim)
            throw SchemaError("family", "tag implies dim " + std::to_string(expected) +
                                            " but algebra has dim " + std::to_string(dim));
    };
    if (kind == "Lt") {
        LtTag tag{j.at("n").get<std::size_t>(), j.at("alphas").get<std::vector<int>>()};
        if (tag.alphas.size() != tag.n)
            throw SchemaError("family.alphas", "expected n entries");
        for (int a : tag.alphas)
            if (a != 0 && a != -1)
                throw SchemaError("family.alphas", "entries must be -1 or 0");
        check_dim(2 * tag.n);
        return tag;
    }
    if (kind == "R1" || kind == "R2") {
        const auto n = j.at("n").get<std::size_t>();
        check_dim(n + 1);
        if (kind == "R1")
            return R1Tag{n};
        return R2Tag{n};
    }
    if (kind == "ModelN" || kind == "RModel") {
        const auto m = j.at("m").get<std::vector<std::size_t>>();
        std::size_t total = 0;
        for (std::size_t mt : m)
            total += mt;
        if (kind == "ModelN") {
            check_dim(total);
            return ModelNTag{m};
        }
        check_dim(total + m.size());
        return RModelTag{m};
    }
    throw SchemaError("family.kind", "unknown family '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

inline json serialize_algebra(const LeibnizAlgebra& a)
{
    json j;
    j["dim"] = a.dim();
    j["basis"] = a.basis_names();
    json brackets = json::array();
    for (const auto& [ij, terms] : a.structure()) {
        json entry;
        entry["i"] = ij.first;
        entry["j"] = ij.second;
        json jterms = json::array();
        for (const auto& [k, c] : terms)
            jterms.push_back(json::array({k, to_string(c)}));
        entry["terms"] = std::move(jterms);
        brackets.push_back(std::move(entry));
    }
    j["brackets"] = std::move(brackets);
    if (a.family())
        j["family"] = family_to_json(*a.family());
    return j;
}

/// Strict by default: scalars must be canonical, zero terms and duplicate
/// entries are rejected. With normalize=true scalars are reduced and zero
/// terms dropped instead.
inline LeibnizAlgebra parse_algebra(const json& j, bool normalize = false)
{
    detail::require_fields(j, "algebra", {"dim", "basis", "brackets"}, {"family"});
    if (!j.at("dim").is_number_unsigned())
        throw SchemaError("dim", "must be a non-negative integer");
    const auto dim = j.at("dim").get<std::size_t>();
    if (!j.at("basis").is_array())
        throw SchemaError("basis", "must be an array of names");
    auto names = j.at("basis").get<std::vector<std::string>>();
    if (names.size() != dim)
        throw SchemaError("basis", "expected " + std::to_string(dim) + " names");
    for (std::size_t a = 0; a < names.size(); ++a)
        for (std::size_t b = a + 1; b < names.size(); ++b)
            if (names[a] == names[b])
                throw SchemaError("basis", "duplicate name '" + names[a] + "'");

    LeibnizAlgebra::StructureMap structure;
    if (!j.at("brackets").is_array())
        throw SchemaError("brackets", "must be an array");
    std::size_t pos = 0;
    for (const auto& entry : j.at("brackets")) {
        const std::string where = "brackets[" + std::to_string(pos) + "]";
        detail::require_fields(entry, where, {"i", "j", "terms"});
        const std::size_t bi = detail::parse_index(entry.at("i"), where + ".i", dim);
        const std::size_t bj = detail::parse_index(entry.at("j"), where + ".j", dim);
        if (structure.count({bi, bj}))
            throw SchemaError(where, "duplicate bracket (" + std::to_string(bi) + "," +
                                         std::to_string(bj) + ")");
        if (!entry.at("terms").is_array())
            throw SchemaError(where + ".terms", "must be an array");
        LeibnizAlgebra::Terms terms;
        std::size_t tpos = 0;
        for (const auto& term : entry.at("terms")) {
            const std::string twhere = where + ".terms[" + std::to_string(tpos) + "]";
            if (!term.is_array() || term.size() != 2)
                throw SchemaError(twhere, "expected [k, scalar]");
            const std::size_t k = detail::parse_index(term.at(0), twhere, dim);
            for (const auto& [prev, unused] : terms)
                if (prev == k)
                    throw SchemaError(twhere, "duplicate target index " + std::to_string(k));
            const Rational c = detail::parse_scalar(term.at(1), twhere, normalize);
            if (is_zero(c)) {
                if (!normalize)
                    throw SchemaError(twhere, "zero coefficient must be omitted");
                ++tpos;
                continue;
            }
            terms.emplace_back(k, c);
            ++tpos;
        }
        if (!terms.empty())
            structure[{bi, bj}] = std::move(terms);
        else if (!normalize)
            throw SchemaError(where, "empty bracket entry must be omitted");
        ++pos;
    }

    std::optional<FamilyTag> family;
    if (j.contains("family"))
        family = family_from_json(j.at("family"), dim);
    return LeibnizAlgebra(dim, std::move(names), std::move(structure), std::move(family));
}

// ---------------------------------------------------------------------------
// Operators, vectors, nabla specs
// ---------------------------------------------------------------------------

inline json vec_to_json(const Vec& v)
{
    json arr = json::array();
    for (const auto& x : v)
        arr.push_back(to_string(x));
    return arr;
}

inline Vec vec_from_json(const json& j, const std::string& where, std::size_t dim,
                         bool normalize = false)
{
    if (!j.is_array() || j.size() != dim)
        throw SchemaError(where, "expected an array of " + std::to_string(dim) + " scalars");
    Vec v;
    v.reserve(dim);
    std::size_t pos = 0;
    for (const auto& x : j) {
        v.push_back(detail::parse_scalar(x, where + "[" + std::to_string(pos) + "]", normalize));
        ++pos;
    }
    return v;
}

inline json serialize_operator(const LinearOperator& op)
{
    json j;
    j["dim"] = op.dim();
    json cols = json::array();
    for (std::size_t c = 0; c < op.dim(); ++c)
        cols.push_back(vec_to_json(op.matrix().col(c)));
    j["columns"] = std::move(cols);
    return j;
}

inline LinearOperator parse_operator(const json& j, bool normalize = false)
{
    detail::require_fields(j, "operator", {"dim", "columns"});
    const auto dim = j.at("dim").get<std::size_t>();
    if (!j.at("columns").is_array() || j.at("columns").size() != dim)
        throw SchemaError("columns", "expected " + std::to_string(dim) + " columns");
    Matrix m(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        const Vec col = vec_from_json(j.at("columns")[c], "columns[" + std::to_string(c) + "]",
                                      dim, normalize);
        for (std::size_t r = 0; r < dim; ++r)
            m.at(r, c) = col[r];
    }
    return LinearOperator(std::move(m));
}

inline json serialize_nabla_spec(const NablaSpec& spec)
{
    json j;
    j["l1"] = vec_to_json(spec.l1());
    j["l2"] = vec_to_json(spec.l2());
    j["w"] = vec_to_json(spec.w());
    j["rule"] = "z1^2/z2";
    return j;
}

} // namespace leibniz
