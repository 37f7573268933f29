#pragma once

/**
 * @file cli.hpp
 * @brief The polyk0 command line: argument parsing, JSON in and out, exit codes.
 *
 * Exit codes: 0 success, 1 a counterexample was found, 2 usage or input error.
 */

#include "json_io.hpp"
#include "suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace polyk0 {

enum ExitCode : int { kExitOk = 0, kExitCounterexample = 1, kExitUsage = 2 };

struct Config {
    std::size_t cap = kDefaultFiniteCap; ///< largest finite monoid accepted
    std::optional<std::size_t> box;     ///< verification box side; default n + 2 for degree n
    std::string format = "json";         ///< json | table
    std::uint64_t seed = kDefaultSeed;
    std::string fixtures_dir = "fixtures";
};

namespace cli {

inline std::size_t box_for(const Config& cfg, std::size_t n) { return cfg.box ? *cfg.box : n + 2; }

namespace jio = polyk0::json;
using Json = nlohmann::json;

inline void print_table(std::ostream& out, const Json& j, const std::string& indent = "")
{
    if (!j.is_object()) {
        out << indent << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
        return;
    }
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out << indent << key << ":\n";
            print_table(out, value, indent + "  ");
        } else {
            out << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
}

inline void emit(std::ostream& out, const Config& cfg, const Json& j)
{
    if (cfg.format == "table")
        print_table(out, j);
    else
        out << j.dump(2) << "\n";
}

inline Json witness_json(const DegreeWitness& w)
{
    Json dirs = Json::array();
    for (const auto& d : w.directions)
        dirs.push_back(jio::to_json(d));
    return {{"directions", dirs}, {"point", jio::to_json(w.point)}, {"value", jio::value_to_json(w.value)}};
}

inline Json quotient_counterexample_json(const QuotientCounterexample& c)
{
    return {{"point", jio::to_json(c.point)},
            {"relation", jio::to_json(c.relation)},
            {"value", jio::value_to_json(c.value)},
            {"shifted_value", jio::value_to_json(c.shifted_value)}};
}

/// Values of f on the verification box (every element on finite domains).
inline Json sample_values(const PolyMap& f, std::size_t box)
{
    Json values = Json::array();
    for (const auto& x : f.domain().test_points(box))
        values.push_back({{"at", jio::to_json(x)}, {"value", jio::value_to_json(f(x))}});
    return values;
}

inline PolyMap load_map(const std::string& arg, const Config& cfg, std::optional<long> degree)
{
    Json j = jio::load(arg, cfg.fixtures_dir);
    if (degree)
        j["degree"] = *degree;
    return jio::polymap_from(j, cfg.cap);
}

inline int cmd_snf(const std::string& matrix, const Config& cfg, std::ostream& out)
{
    Json j = jio::load(matrix, cfg.fixtures_dir);
    std::optional<std::size_t> cols;
    if (j.is_object()) {
        if (j.contains("cols"))
            cols = jio::size_from(j.at("cols"), "cols");
        j = j.at("matrix");
    }
    IntMatrix A = jio::matrix_from(j, cols);
    SmithForm s = detail::smith(A, true);
    Vec factors;
    for (const auto& d : s.diagonal())
        if (d != 0 && d != 1)
            factors.push_back(d);
    FgAbelianGroup coker = FgAbelianGroup::from_relations(A.cols(), A);
    emit(out, cfg,
         {{"diagonal", jio::to_json(s.diagonal())},
          {"rank", s.rank},
          {"U", jio::to_json(s.U)},
          {"V", jio::to_json(s.V)},
          {"invariant_factors", jio::to_json(factors)},
          {"cokernel", coker.describe()}});
    return kExitOk;
}

inline int cmd_group_complete(const std::string& monoid, const Config& cfg, std::ostream& out)
{
    CommMonoid M = jio::monoid_from(jio::load(monoid, cfg.fixtures_dir), cfg.cap);
    GroupCompletion completion(M);
    Json classes = Json::array();
    const auto points = M.is_finite() ? M.elements() : M.generators();
    for (const auto& m : points)
        classes.push_back({{"element", jio::to_json(m)}, {"class", jio::to_json(completion(m))}});
    emit(out, cfg,
         {{"monoid", M.describe()}, {"group", jio::to_json(completion.group())}, {"classes", classes}});
    return kExitOk;
}

inline int cmd_monoid_quotient(const std::string& monoid, std::size_t degree, std::optional<std::string> mod,
                               const Config& cfg, std::ostream& out)
{
    CommMonoid M = jio::monoid_from(jio::load(monoid, cfg.fixtures_dir), cfg.cap);
    CoefficientRing R = mod ? CoefficientRing::mod(parse_int(*mod)) : CoefficientRing::integers();
    auto Q = aug_ideal_power_quotient(M, degree, R);
    Json table = Json::array();
    for (const auto& row : Q.multiplication_table()) {
        Json r = Json::array();
        for (const auto& v : row)
            r.push_back(jio::to_json(v));
        table.push_back(r);
    }
    emit(out, cfg,
         {{"ring", R.name()},
          {"degree", degree},
          {"group", jio::to_json(Q.group())},
          {"basis", Q.basis_labels()},
          {"multiplication", table}});
    return kExitOk;
}

inline int cmd_verify_degree(const std::string& map, std::optional<long> degree, const Config& cfg,
                             std::ostream& out)
{
    PolyMap f = load_map(map, cfg, std::nullopt);
    long n = degree ? *degree : (f.degree() ? static_cast<long>(*f.degree()) : -1);
    if (n < 0)
        throw Error("--degree must be given and non-negative");
    DegreeCheck c = verify_degree(f, static_cast<std::size_t>(n), box_for(cfg, static_cast<std::size_t>(n)));
    Json j{{"degree", n}, {"holds", c.holds}, {"exhaustive", c.exhaustive}};
    if (c.witness)
        j["witness"] = witness_json(*c.witness);
    emit(out, cfg, j);
    return c.holds ? kExitOk : kExitCounterexample;
}

inline int cmd_extend(const std::string& map, std::optional<long> degree, const Config& cfg, std::ostream& out)
{
    PolyMap f = load_map(map, cfg, degree);
    if (!f.degree()) {
        emit(out, cfg, jio::to_json(extend_over_group_completion(f)));
        return kExitOk;
    }
    const std::size_t n = *f.degree();
    DegreeCheck c = verify_degree(f, n, box_for(cfg, n));
    if (!c.holds) {
        Json j{{"degree", n}, {"holds", false}};
        if (c.witness)
            j["witness"] = witness_json(*c.witness);
        emit(out, cfg, j);
        return kExitCounterexample;
    }
    PolyMap g = extend_over_group_completion(certify(f, n, box_for(cfg, n)));
    Json j = jio::to_json(g);
    if (!g.is_mahler())
        j["values"] = sample_values(g, box_for(cfg, n));
    emit(out, cfg, j);
    return kExitOk;
}

inline int cmd_k0(const std::string& spec, std::optional<std::string> rels, std::optional<std::string> induce,
                  std::optional<std::string> target, std::optional<long> degree, const Config& cfg, std::ostream& out)
{
    StableCatSpec C = jio::catspec_from(jio::load(spec, cfg.fixtures_dir), cfg.cap);
    if (rels) {
        auto extra = jio::relations_from(jio::load(*rels, cfg.fixtures_dir));
        C.cofiber_relations.insert(C.cofiber_relations.end(), extra.begin(), extra.end());
    }
    K0Group K(C);
    Json classes = Json::array();
    const auto points = C.pi0().is_finite() ? C.pi0().elements() : C.pi0().generators();
    for (const auto& m : points)
        classes.push_back({{"object", jio::to_json(m)}, {"class", jio::to_json(K.class_of(m))}});
    Json j{{"k0", jio::to_json(K.group())}, {"classes", classes}};
    if (!induce) {
        emit(out, cfg, j);
        return kExitOk;
    }
    StableCatSpec D = target ? jio::catspec_from(jio::load(*target, cfg.fixtures_dir), cfg.cap) : C;
    Json mj = jio::load(*induce, cfg.fixtures_dir);
    if (!mj.contains("domain"))
        mj["domain"] = jio::to_json(C.pi0());
    if (!mj.contains("codomain"))
        mj["codomain"] = jio::to_json(K0Group(D).group());
    if (degree)
        mj["degree"] = *degree;
    PolyMap F = jio::polymap_from(mj, cfg.cap);
    if (!F.degree())
        throw Error("--induce: the zero map needs no extension");
    DegreeCheck c = verify_degree(F, *F.degree(), box_for(cfg, *F.degree()));
    if (!c.holds) {
        j["holds"] = false;
        if (c.witness)
            j["witness"] = witness_json(*c.witness);
        emit(out, cfg, j);
        return kExitCounterexample;
    }
    InducedResult r = induced_k0_map(F, *F.degree(), C, D);
    if (auto* bad = std::get_if<QuotientCounterexample>(&r)) {
        j["factors"] = false;
        j["counterexample"] = quotient_counterexample_json(*bad);
        emit(out, cfg, j);
        return kExitCounterexample;
    }
    const auto& induced = std::get<InducedMap>(r);
    j["factors"] = true;
    j["induced"] = {{"degree", F.degree() ? static_cast<long>(*F.degree()) : -1L},
                    {"values", sample_values(induced.map, box_for(cfg, *F.degree()))}};
    emit(out, cfg, j);
    return kExitOk;
}

inline int cmd_lambda(std::size_t i, const std::string& at, bool adams, const Config& cfg, std::ostream& out)
{
    Int x = parse_int(at);
    Int value;
    if (adams) {
        if (i == 0)
            throw Error("--i must be at least 1 for Adams operations");
        value = lambda_and_adams(i).adams[i](Coords{x})[0];
    } else {
        value = extend_over_group_completion(binomial_map(i, false))(Coords{x})[0];
    }
    // a bare decimal integer is valid JSON and reads the same in table format
    (void)cfg;
    out << value.get_str() << "\n";
    return kExitOk;
}

inline int cmd_dold_kan(const std::string& complex, std::optional<std::size_t> levels, const Config& cfg,
                        std::ostream& out)
{
    ChainComplex C = jio::complex_from(jio::load(complex, cfg.fixtures_dir));
    SimplicialModule G = dk_gamma(C, levels);
    DoldKanComparison cmp = dold_kan_comparison(C);
    Json h = Json::array();
    for (const auto& g : homology(C))
        h.push_back(g.describe());
    emit(out, cfg,
         {{"gamma", jio::to_json(G)},
          {"normalized_ranks", normalized_ranks(G)},
          {"homology", h},
          {"chain_map", cmp.chain_map},
          {"isomorphism", cmp.isomorphism}});
    return cmp.chain_map && cmp.isomorphism ? kExitOk : kExitCounterexample;
}

/// {"ring": "Z/2", "matrix": [[...]], "levels": L}, or just the matrix.
inline int cmd_cech(const std::string& map, std::optional<std::string> ring_arg, std::optional<std::size_t> levels,
                    std::optional<std::string> functor, const Config& cfg, std::ostream& out)
{
    Json j = jio::load(map, cfg.fixtures_dir);
    CoefficientRing ring = CoefficientRing::integers();
    std::optional<std::size_t> cols;
    if (j.is_object()) {
        if (j.contains("ring"))
            ring = jio::ring_from(j.at("ring"));
        if (j.contains("levels") && !levels)
            levels = jio::size_from(j.at("levels"), "levels");
        if (j.contains("cols"))
            cols = jio::size_from(j.at("cols"), "cols");
        j = j.at("matrix");
    }
    if (ring_arg)
        ring = CoefficientRing::mod(parse_int(*ring_arg));
    IntMatrix f = jio::matrix_from(j, cols);
    std::optional<FunctorSpec> F;
    if (functor)
        F = FunctorSpec::parse(*functor);
    const std::size_t L = levels ? *levels : (F ? F->degree() + 1 : 2);
    SimplicialModule X = cech_nerve(f, ring, L);
    Json r{{"nerve", jio::to_json(X)}, {"normalized_ranks", normalized_ranks(X)}};
    auto sk = skeletal_degree(X);
    r["skeletal_degree"] = sk ? Json(*sk) : Json(nullptr);
    if (F) {
        SimplicialModule Y = apply_functor_levelwise(*F, X);
        auto skY = skeletal_degree(Y);
        r["functor"] = F->name();
        r["output_ranks"] = Y.ranks();
        r["output_normalized_ranks"] = normalized_ranks(Y);
        r["output_skeletal_degree"] = skY ? Json(*skY) : Json(nullptr);
        if (L >= F->degree())
            r["euler_class"] = jio::to_json(euler_class(Y, std::min(L - 1, F->degree())));
    }
    emit(out, cfg, r);
    return kExitOk;
}

inline int cmd_derive(const std::string& functor, const std::string& complex, const Config& cfg, std::ostream& out)
{
    FunctorSpec F = FunctorSpec::parse(functor);
    ChainComplex C = jio::complex_from(jio::load(complex, cfg.fixtures_dir));
    Json h = Json::array();
    for (const auto& g : derived_functor_homology(F, C))
        h.push_back(jio::to_json(g));
    emit(out, cfg, {{"functor", F.name()}, {"homology", h}});
    return kExitOk;
}

inline int cmd_char(const std::string& functor, std::size_t vars, std::optional<std::string> mod,
                    std::optional<std::string> compare, const Config& cfg, std::ostream& out)
{
    FunctorSpec F = FunctorSpec::parse(functor);
    std::size_t p = mod ? jio::size_from(Json(*mod), "--mod") : F.degree();
    SymmetricPolynomial chi = character(F, vars, p);
    Json j{{"functor", F.name()}, {"character", jio::to_json(chi)}};
    if (!compare) {
        emit(out, cfg, j);
        return kExitOk;
    }
    if (*compare != "frobenius")
        throw Error("--compare only supports \"frobenius\"");
    if (!mod)
        throw Error("--compare frobenius needs --mod p");
    SymmetricPolynomial twist = character(FunctorSpec::frobenius(p), vars, p);
    auto r = check_divisibility(chi, twist, Int(static_cast<unsigned long>(p)));
    if (auto* bad = std::get_if<DivisibilityCounterexample>(&r)) {
        j["divisible"] = false;
        j["counterexample"] = {{"monomial", bad->monomial}, {"coefficient", jio::to_json(bad->coefficient)}};
        emit(out, cfg, j);
        return kExitCounterexample;
    }
    const auto& q = std::get<SymmetricPolynomial>(r);
    j["divisible"] = true;
    j["quotient"] = q.to_string();
    j["quotient_terms"] = jio::to_json(q);
    emit(out, cfg, j);
    return kExitOk;
}

inline int cmd_verify_all(const std::vector<std::string>& only, bool timings, const Config& cfg, std::ostream& out)
{
    auto names = suite_names();
    for (const auto& s : only)
        if (std::find(names.begin(), names.end(), s) == names.end())
            throw CLI::ValidationError("--suite", "unknown suite \"" + s + "\"");
    bool all = true;
    Json results = Json::array();
    for (const auto& name : names) {
        if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end())
            continue;
        SuiteReport r = run_suite(name, cfg.seed);
        all = all && r.passed;
        if (cfg.format == "table") {
            out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail;
            if (timings)
                out << " [" << r.seconds << " s, bound " << r.bound_seconds << " s]";
            out << "\n";
        } else {
            Json e{{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}};
            if (timings)
                e["seconds"] = r.seconds;
            results.push_back(e);
        }
    }
    if (cfg.format != "table")
        out << Json{{"passed", all}, {"suites", results}}.dump(2) << "\n";
    return all ? kExitOk : kExitCounterexample;
}

} // namespace cli

/// Runs one polyk0 invocation; argv[0] is the program name.
inline int run_subcommand(int argc, const char* const* argv, std::ostream& out = std::cout,
                          std::ostream& err = std::cerr)
{
    Config cfg;
    if (const char* env = std::getenv("POLYK0_FIXTURES"))
        cfg.fixtures_dir = env;

    CLI::App app{"Polynomial maps, K0 and Dold-Kan computations"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    app.add_option("--seed", cfg.seed, "random seed for the verification suites");
    app.add_option("--box", cfg.box, "side of the verification box")->check(CLI::PositiveNumber);
    app.add_option("--cap", cfg.cap, "largest finite monoid accepted")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.fallthrough();

    std::string matrix, monoid, map, spec, complex, functor, at;
    std::optional<std::string> mod, rels, induce, target, compare, ring;
    std::optional<long> degree;
    std::optional<std::size_t> levels;
    std::size_t n = 0, vars = 0, i = 0;
    bool adams = false, timings = false;
    std::vector<std::string> suites;
    std::function<int()> action;

    auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    snf->add_option("--matrix", matrix, "matrix JSON (inline or file)")->required();
    snf->callback([&] { action = [&] { return cli::cmd_snf(matrix, cfg, out); }; });

    auto* gc = app.add_subcommand("group-complete", "group completion of a commutative monoid");
    gc->add_option("--monoid", monoid, "monoid JSON")->required();
    gc->callback([&] { action = [&] { return cli::cmd_group_complete(monoid, cfg, out); }; });

    auto* mq = app.add_subcommand("monoid-quotient", "Z[M]/I^(n+1) or its reduction mod p");
    mq->add_option("--monoid", monoid, "monoid JSON")->required();
    mq->add_option("--degree", n, "n")->required();
    mq->add_option("--mod", mod, "coefficients Z/p");
    mq->callback([&] { action = [&] { return cli::cmd_monoid_quotient(monoid, n, mod, cfg, out); }; });

    auto* ext = app.add_subcommand("extend", "extend a polynomial map over the group completion");
    ext->add_option("--map", map, "map JSON")->required();
    ext->add_option("--degree", degree, "degree bound (overrides the map's)");
    ext->callback([&] { action = [&] { return cli::cmd_extend(map, degree, cfg, out); }; });

    auto* vd = app.add_subcommand("verify-degree", "check a degree bound, reporting a witness on failure");
    vd->add_option("--map", map, "map JSON")->required();
    vd->add_option("--degree", degree, "degree bound");
    vd->callback([&] { action = [&] { return cli::cmd_verify_degree(map, degree, cfg, out); }; });

    auto* k0 = app.add_subcommand("k0", "K0 of an additive or stable category");
    k0->add_option("--spec", spec, "category JSON")->required();
    k0->add_option("--rels", rels, "extra cofiber relations JSON");
    k0->add_option("--induce", induce, "values of a functor on pi0, as a map JSON");
    k0->add_option("--target", target, "target category JSON (default: the source)");
    k0->add_option("--degree", degree, "degree of the functor");
    k0->callback([&] { action = [&] { return cli::cmd_k0(spec, rels, induce, target, degree, cfg, out); }; });

    auto* lam = app.add_subcommand("lambda", "lambda^i or psi^i on K0 = Z");
    lam->add_option("--i", i, "operation index")->required();
    lam->add_option("--at", at, "argument")->required()->allow_extra_args(false);
    lam->add_flag("--adams", adams, "Adams operation psi^i instead of lambda^i");
    lam->callback([&] { action = [&] { return cli::cmd_lambda(i, at, adams, cfg, out); }; });

    auto* dk = app.add_subcommand("dold-kan", "Gamma of a chain complex and the roundtrip comparison");
    dk->add_option("--complex", complex, "complex JSON")->required();
    dk->add_option("--levels", levels, "highest simplicial level to build");
    dk->callback([&] { action = [&] { return cli::cmd_dold_kan(complex, levels, cfg, out); }; });

    auto* cech = app.add_subcommand("cech", "Cech nerve of a map of free modules");
    cech->add_option("--map", map, "matrix JSON")->required();
    cech->add_option("--mod", ring, "coefficients Z/p");
    cech->add_option("--levels", levels, "highest simplicial level to build");
    cech->add_option("--functor", functor, "apply a functor levelwise");
    std::optional<std::string> cech_functor;
    cech->callback([&] {
        if (!functor.empty())
            cech_functor = functor;
        action = [&] { return cli::cmd_cech(map, ring, levels, cech_functor, cfg, out); };
    });

    auto* der = app.add_subcommand("derive", "homology of F applied to Gamma of a complex");
    der->add_option("--functor", functor, "functor, e.g. sym:2")->required();
    der->add_option("--complex", complex, "complex JSON")->required();
    der->callback([&] { action = [&] { return cli::cmd_derive(functor, complex, cfg, out); }; });

    auto* ch = app.add_subcommand("char", "character of a polynomial functor");
    ch->add_option("--functor", functor, "functor, e.g. tensor:3")->required();
    ch->add_option("--vars", vars, "number of variables")->required();
    ch->add_option("--mod", mod, "prime p");
    ch->add_option("--compare", compare, "\"frobenius\": report (char F - char twist) / p");
    ch->callback([&] { action = [&] { return cli::cmd_char(functor, vars, mod, compare, cfg, out); }; });

    auto* va = app.add_subcommand("verify-all", "run the verification suites");
    va->add_option("--suite", suites, "suite name (repeatable); default all");
    va->add_flag("--timings", timings, "include wall-clock times (output is then not reproducible)");
    va->callback([&] { action = [&] { return cli::cmd_verify_all(suites, timings, cfg, out); }; });

    try {
        for (int a = 1; a < argc; ++a) {
            std::string word = argv[a];
            if (word.empty() || word[0] == '-') {
                ++a; // every global option takes a value
                continue;
            }
            bool known = false;
            for (const auto* sub : app.get_subcommands({}))
                known = known || sub->check_name(word);
            if (!known)
                throw CLI::ValidationError("subcommand", "unknown subcommand \"" + word + "\"");
            break;
        }
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "polyk0: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        return action();
    } catch (const CLI::ParseError& e) {
        err << "polyk0: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "polyk0: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "polyk0: malformed input: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace polyk0
