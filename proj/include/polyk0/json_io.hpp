#pragma once

/**
 * @file json_io.hpp
 * @brief JSON encodings. Integers are written as decimal strings and read
 * from either strings or JSON numbers.
 */

#include "k0.hpp"
#include "simplicial.hpp"
#include "symmetric.hpp"

#include <json.hpp>

#include <fstream>

namespace polyk0::json {

using nlohmann::json;

inline json to_json(const Int& x) { return x.get_str(); }

inline Int int_from(const json& j)
{
    if (j.is_string())
        return parse_int(j.get<std::string>());
    if (j.is_number_integer())
        return Int(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned())
        return Int(std::to_string(j.get<unsigned long long>()));
    throw Error("expected an integer, got " + j.dump());
}

inline std::size_t size_from(const json& j, const std::string& what)
{
    Int x = int_from(j);
    if (x < 0 || !x.fits_ulong_p())
        throw Error(what + " must be a non-negative integer");
    return x.get_ui();
}

inline json to_json(const Vec& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

inline Vec vec_from(const json& j)
{
    if (!j.is_array())
        throw Error("expected an array of integers, got " + j.dump());
    Vec v;
    for (const auto& x : j)
        v.push_back(int_from(x));
    return v;
}

inline json to_json(const IntMatrix& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        a.push_back(to_json(m.row(i)));
    return a;
}

/// `cols` is needed for matrices with no rows.
inline IntMatrix matrix_from(const json& j, std::optional<std::size_t> cols = std::nullopt)
{
    if (!j.is_array())
        throw Error("matrix must be an array of rows");
    std::vector<Vec> rows;
    for (const auto& r : j)
        rows.push_back(vec_from(r));
    std::size_t c = cols ? *cols : (rows.empty() ? 0 : rows[0].size());
    for (const auto& r : rows)
        if (r.size() != c)
            throw Error("matrix rows have different lengths");
    return IntMatrix::from_rows(rows, c);
}

inline json to_json(const CoefficientRing& r) { return r.name(); }

inline CoefficientRing ring_from(const json& j)
{
    std::string s = j.get<std::string>();
    if (s == "Z")
        return CoefficientRing::integers();
    if (s.rfind("Z/", 0) == 0)
        return CoefficientRing::mod(parse_int(s.substr(2)));
    throw Error("ring must be \"Z\" or \"Z/m\", got \"" + s + "\"");
}

inline json to_json(const FgAbelianGroup& g)
{
    return {{"torsion", to_json(g.torsion())}, {"free_rank", g.free_rank()}, {"describe", g.describe()}};
}

inline json to_json(const CommMonoid& m)
{
    if (m.is_free())
        return {{"type", "free"}, {"rank", m.rank()}};
    return {{"type", "finite"}, {"table", m.table()}};
}

/// {"type":"free","rank":k}, {"type":"finite","table":[[...]]} or the
/// shorthand {"type":"cyclic","order":n}.
inline CommMonoid monoid_from(const json& j, std::size_t cap = kDefaultFiniteCap)
{
    if (!j.is_object() || !j.contains("type"))
        throw Error("monoid must be an object with a \"type\" field");
    std::string type = j.at("type").get<std::string>();
    if (type == "free")
        return CommMonoid::free(size_from(j.at("rank"), "rank"));
    if (type == "cyclic")
        return CommMonoid::cyclic_group(size_from(j.at("order"), "order"), cap);
    if (type == "finite") {
        std::vector<std::vector<std::size_t>> table;
        for (const auto& row : j.at("table")) {
            std::vector<std::size_t> r;
            for (const auto& x : row)
                r.push_back(size_from(x, "table entry"));
            table.push_back(std::move(r));
        }
        return CommMonoid::finite(std::move(table), cap);
    }
    throw Error("unknown monoid type \"" + type + "\"");
}

/// {"torsion":[...],"free_rank":r}; also accepts the string "Z".
inline FgAbelianGroup group_from(const json& j)
{
    if (j.is_string() && j.get<std::string>() == "Z")
        return FgAbelianGroup::free(1);
    Vec torsion = j.contains("torsion") ? vec_from(j.at("torsion")) : Vec{};
    std::size_t r = j.contains("free_rank") ? size_from(j.at("free_rank"), "free_rank") : 0;
    return FgAbelianGroup::from_invariants(torsion, r);
}

/// An element of a monoid: a coordinate array, or an index for FINITE monoids.
inline Coords element_from(const json& j)
{
    if (j.is_array())
        return vec_from(j);
    return Coords{int_from(j)};
}

inline Domain domain_from(const json& j, std::size_t cap)
{
    if (j.is_object() && j.value("type", "") == "group")
        return Domain(group_from(j));
    return Domain(monoid_from(j, cap));
}

inline json to_json(const Domain& d)
{
    if (d.is_monoid())
        return to_json(d.monoid());
    json g = to_json(d.group());
    g["type"] = "group";
    return g;
}

inline std::string multi_index_key(const MultiIndex& j)
{
    std::string s;
    for (std::size_t i = 0; i < j.size(); ++i)
        s += (i ? "," : "") + std::to_string(j[i]);
    return s;
}

inline MultiIndex multi_index_from(const std::string& key, std::size_t rank)
{
    MultiIndex j;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ','))
        j.push_back(size_from(json(part), "multi-index entry"));
    if (j.size() != rank)
        throw Error("multi-index \"" + key + "\" should have " + std::to_string(rank) + " entries");
    return j;
}

/// A value in the codomain: a single integer for rank-one codomains, or an array.
inline json value_to_json(const Vec& v) { return v.size() == 1 ? to_json(v[0]) : to_json(v); }

inline Vec value_from(const json& j) { return j.is_array() ? vec_from(j) : Vec{int_from(j)}; }

/// {"domain":..., "codomain":..., "degree":n, "mahler":{"i,j":"c"}} or
/// {"domain":..., "degree":n, "table":[...]}; degree -1 is the zero map.
inline PolyMap polymap_from(const json& j, std::size_t cap = kDefaultFiniteCap)
{
    Domain dom = domain_from(j.at("domain"), cap);
    FgAbelianGroup cod = j.contains("codomain") ? group_from(j.at("codomain")) : FgAbelianGroup::free(1);
    Degree degree;
    Int d = int_from(j.at("degree"));
    if (d >= 0)
        degree = d.get_ui();
    else if (d != -1)
        throw Error("degree must be >= -1");
    if (j.contains("mahler")) {
        MahlerCoefficients coeffs;
        for (const auto& [key, value] : j.at("mahler").items())
            coeffs[multi_index_from(key, dom.coordinate_count())] = value_from(value);
        return PolyMap::mahler(dom, cod, degree, std::move(coeffs));
    }
    if (j.contains("table")) {
        std::vector<Vec> values;
        for (const auto& v : j.at("table"))
            values.push_back(value_from(v));
        return PolyMap::table(dom, cod, degree, std::move(values));
    }
    throw Error("map needs a \"mahler\" or \"table\" field");
}

inline json to_json(const PolyMap& f)
{
    json j{{"domain", to_json(f.domain())},
           {"codomain", to_json(f.codomain())},
           {"degree", f.degree() ? static_cast<long>(*f.degree()) : -1L},
           {"certified", f.certified()}};
    if (f.is_mahler()) {
        json m = json::object();
        for (const auto& [idx, c] : f.mahler_coefficients())
            m[multi_index_key(idx)] = value_to_json(c);
        j["mahler"] = m;
    } else if (f.is_table()) {
        json t = json::array();
        for (const auto& v : f.table_values())
            t.push_back(value_to_json(v));
        j["table"] = t;
    } else {
        j["representation"] = "black box";
    }
    return j;
}

/// {"pi0": monoid, "cofiber_relations": [{"sub":x',"total":x,"quotient":x''}]}
inline StableCatSpec catspec_from(const json& j, std::size_t cap = kDefaultFiniteCap)
{
    StableCatSpec s{{monoid_from(j.at("pi0"), cap)}, {}};
    if (j.contains("cofiber_relations"))
        for (const auto& r : j.at("cofiber_relations"))
            s.cofiber_relations.push_back(
                {element_from(r.at("sub")), element_from(r.at("total")), element_from(r.at("quotient"))});
    return s;
}

inline std::vector<CofiberRelation> relations_from(const json& j)
{
    const json& list = j.is_object() ? j.at("cofiber_relations") : j;
    std::vector<CofiberRelation> out;
    for (const auto& r : list)
        out.push_back({element_from(r.at("sub")), element_from(r.at("total")), element_from(r.at("quotient"))});
    return out;
}

/// {"ring":"Z","ranks":[...],"d":[d_1, ..., d_N]}
inline ChainComplex complex_from(const json& j)
{
    CoefficientRing ring = j.contains("ring") ? ring_from(j.at("ring")) : CoefficientRing::integers();
    std::vector<std::size_t> ranks;
    for (const auto& r : j.at("ranks"))
        ranks.push_back(size_from(r, "rank"));
    std::vector<IntMatrix> d;
    if (j.contains("d")) {
        const json& list = j.at("d");
        if (list.size() + 1 != ranks.size())
            throw Error("complex with " + std::to_string(ranks.size()) + " degrees needs " +
                        std::to_string(ranks.size() - 1) + " differentials");
        for (std::size_t k = 1; k < ranks.size(); ++k)
            d.push_back(matrix_from(list[k - 1], ranks[k]));
    } else {
        for (std::size_t k = 1; k < ranks.size(); ++k)
            d.emplace_back(ranks[k - 1], ranks[k]);
    }
    return ChainComplex(ring, ranks, std::move(d));
}

inline json to_json(const ChainComplex& C)
{
    json d = json::array();
    for (std::size_t k = 1; k <= C.top(); ++k)
        d.push_back(to_json(C.differential(k)));
    return {{"ring", to_json(C.ring())}, {"ranks", C.ranks()}, {"d", d}};
}

inline json to_json(const SimplicialModule& X)
{
    json faces = json::array(), degens = json::array();
    for (std::size_t n = 0; n <= X.top(); ++n) {
        json f = json::array(), s = json::array();
        if (n > 0)
            for (std::size_t i = 0; i <= n; ++i)
                f.push_back(to_json(X.face(n, i)));
        if (n < X.top())
            for (std::size_t j = 0; j <= n; ++j)
                s.push_back(to_json(X.degeneracy(n, j)));
        faces.push_back(f);
        degens.push_back(s);
    }
    return {{"ring", to_json(X.ring())},
            {"ranks", X.ranks()},
            {"faces", faces},
            {"degeneracies", degens},
            {"degenerate_above", X.degenerate_above()}};
}

inline json to_json(const SymmetricPolynomial& p)
{
    json terms = json::array();
    for (const auto& [l, c] : p.terms())
        terms.push_back({{"partition", l}, {"coefficient", to_json(c)}});
    return {{"nvars", p.nvars()}, {"degree", p.degree()}, {"terms", terms}, {"string", p.to_string()}};
}

/// Inline JSON when the text starts with '[' or '{', otherwise a file path.
/// Relative paths that do not exist are looked up under `fixtures_dir`.
inline json load(const std::string& text, const std::string& fixtures_dir = "")
{
    std::size_t first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw Error(std::string("invalid inline JSON: ") + e.what());
        }
    }
    std::ifstream in(text);
    if (!in && !fixtures_dir.empty() && !text.empty() && text[0] != '/')
        in.open(fixtures_dir + "/" + text);
    if (!in)
        throw Error("cannot open " + text);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("invalid JSON in " + text + ": " + e.what());
    }
}

} // namespace polyk0::json
