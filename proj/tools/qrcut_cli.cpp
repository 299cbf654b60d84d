// qrcut: command-line front end for the cut-property verification toolkit.
//
// Every subcommand prints one report (json, csv or text) that echoes the resolved
// configuration. Exit status: 0 when all requested checks pass, 1 when a check fails,
// 2 on usage or input errors.

#include "qrcut/qrcut.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qrcut;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string format = "json";
    std::uint64_t seed = 1;
    std::string tolerance = "3";
    unsigned threads = 0;

    int t = 0, k = 0, j = 0, r = 0, n = 0;
    std::vector<int> v;
    std::string p = "1/4";
    bool brute = false;
    std::string kind;
    std::string suite;
    std::string in, out, second, planted, planted_out;
    std::vector<std::string> alpha;
    std::vector<int> sizes;
    std::size_t trials = 50;
    std::size_t samples = 100;
    bool shuffle = false;
    bool heuristic = false;
    std::size_t restarts = 32;
    bool gram = false;
};

std::string str(const BigRational& q) { return to_string(q); }
std::string str(const BigInt& z) { return z.get_str(); }

Json str_list(const std::vector<BigRational>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(str(x));
    return a;
}

/// Exact suites reject decimal probabilities so that the value checked is the one typed.
BigRational parse_exact(const std::string& text, const char* what) {
    if (text.find_first_of(".eE") != std::string::npos)
        throw std::invalid_argument(std::string(what) + " must be given as a fraction for exact checks, got '" + text + "'");
    return parse_rational(text);
}

double parse_tolerance(const std::string& text) {
    const BigRational tol = parse_rational(text);
    if (sgn(tol) <= 0) throw std::invalid_argument("tolerance must be positive");
    return to_double(tol);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for reading");
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    return f;
}

VertexSet read_vertex_set(const std::string& path) {
    auto f = open_in(path);
    VertexSet s;
    int x;
    while (f >> x) s.push_back(x);
    if (!f.eof()) throw std::runtime_error("vertex set file '" + path + "': expected whitespace-separated integers");
    std::sort(s.begin(), s.end());
    return s;
}

std::vector<BigRational> parse_alpha(const std::vector<std::string>& items) {
    std::vector<BigRational> a;
    for (const auto& s : items) a.push_back(parse_rational(s));
    return a;
}

Json sample_json(const DeviationSample& s) {
    return Json{{"observed", str(s.observed)},
                {"target", str(s.target)},
                {"normalized_deviation", str(s.normalized_deviation)},
                {"normalized_deviation_approx", to_double(s.normalized_deviation)},
                {"sigma", s.sigma},
                {"z_score", s.z_score},
                {"pass", s.pass}};
}

Json statistics_json(const StatisticsReport& rep) {
    Json samples = Json::array();
    for (const auto& s : rep.samples) samples.push_back(sample_json(s));
    return Json{{"samples_drawn", rep.samples.size()},
                {"max_abs_normalized_deviation", str(rep.max_abs_normalized_deviation)},
                {"max_abs_normalized_deviation_approx", to_double(rep.max_abs_normalized_deviation)},
                {"mean_abs_normalized_deviation", str(rep.mean_abs_normalized_deviation)},
                {"max_abs_z", rep.max_abs_z},
                {"z_tolerance", rep.z_tolerance},
                {"samples", samples}};
}

// ---------------------------------------------------------------------------
// Output

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void emit(const Json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    if (format == "csv") {
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows) std::cout << csv_field(k) << ',' << csv_field(v) << '\n';
    } else {
        for (const auto& [k, v] : rows) std::cout << k << ": " << v << '\n';
    }
}

Json base_report(const std::string& command, const std::string& verifies, Json config, const Options& o) {
    config["format"] = o.format;
    config["threads"] = worker_threads();
    return Json{{"command", command}, {"verifies", verifies}, {"config", std::move(config)}};
}

// ---------------------------------------------------------------------------
// Subcommands; each returns the report and sets "pass".

Json cmd_rank(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const RankReport rep = verify_rank_theorem(o.t, o.k, o.v);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json j = base_report("rank", "rank of the partition-intersection matrix A_{t,k,v}", {{"t", o.t}, {"k", o.k}, {"v", o.v}}, o);
    j["rows"] = rep.row_count;
    j["cols"] = rep.col_count;
    j["computed_rank"] = rep.computed_rank;
    j["predicted_rank"] = rep.predicted_rank ? Json(str(*rep.predicted_rank)) : Json(nullptr);
    j["balanced"] = rep.balanced;
    j["regime"] = to_string(rep.regime);
    j["match"] = rep.predicted_rank ? Json(rep.match) : Json(nullptr);
    j["wall_seconds"] = seconds;
    j["pass"] = !rep.predicted_rank || rep.match;
    return j;
}

Json cmd_spectrum(const Options& o) {
    const SchemeSpectrum s = gram_spectrum(o.t, o.k);
    Json j = base_report("spectrum", "eigenvalues of A^T A for balanced A via the Johnson scheme", {{"t", o.t}, {"k", o.k}, {"check_gram", o.gram}}, o);
    Json rows = Json::array();
    bool others_positive = true;
    for (int i = 0; i <= o.k; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        rows.push_back({{"j", i},
                        {"lambda", str(s.lambdas[ui])},
                        {"lambda_star", str(s.lambdas_star[ui])},
                        {"multiplicity", str(s.multiplicities[ui])},
                        {"alpha", str(s.alphas[ui])},
                        {"alpha_star", str(s.alphas_star[ui])}});
        if (i != 1 && sgn(s.lambdas[ui]) <= 0) others_positive = false;
    }
    j["eigenvalues"] = rows;
    j["multiplicity_sum"] = str(s.multiplicity_sum());
    j["binomial_t_k"] = str(binomial(o.t, o.k));
    j["lambda1_zero"] = sgn(s.lambdas[1]) == 0;
    j["others_positive"] = others_positive;
    j["implied_rank"] = str(s.implied_rank());
    bool pass = j["lambda1_zero"].get<bool>() && others_positive && s.multiplicity_sum() == binomial(o.t, o.k);
    if (o.gram) {
        const bool ok = verify_gram_decomposition(o.t, o.k);
        j["gram_decomposition_exact"] = ok;
        pass = pass && ok;
    }
    j["pass"] = pass;
    return j;
}

constexpr double kBruteGoodFunctionCap = 1e7;

Json cmd_goodfn(const Options& o) {
    Json j = base_report("goodfn", "leading coefficient P_j(k) counts good functions Z_j -> Z_k", {{"j", o.j}, {"k", o.k}, {"brute", o.brute}}, o);
    const BigInt closed = leading_coefficient(o.j, o.k);
    j["closed_form"] = str(closed);
    bool pass = true;
    if (o.brute) {
        if (std::pow(static_cast<double>(o.k), o.j) > kBruteGoodFunctionCap)
            throw std::invalid_argument("brute force needs k^j <= 10^7");
        const std::uint64_t count = count_good_functions(o.j, o.k);
        j["brute_force"] = count;
        j["equal"] = BigInt(static_cast<unsigned long>(count)) == closed;
        pass = j["equal"].get<bool>();
    }
    j["pass"] = pass;
    return j;
}

Json cmd_sample(const Options& o) {
    const BigRational p = parse_rational(o.p);
    Json config{{"kind", o.kind}, {"n", o.n}, {"k", o.k}, {"p", str(p)}, {"seed", o.seed}, {"out", o.out}};
    WeightedHypergraph h;
    std::optional<PlantedSample> planted;
    if (o.kind == "gnp") {
        h = sample_gnp(o.n, o.k, p, o.seed);
    } else {
        config["shuffle"] = o.shuffle;
        config["planted_out"] = o.planted_out;
        planted = sample_ckp(o.n, o.k, p, o.seed, o.shuffle);
        h = planted->hypergraph;
    }
    Json j = base_report("sample", o.kind == "gnp" ? "random hypergraph G_k(n,p)" : "planted hypergraph C_k(n,p)", config, o);
    if (!o.out.empty()) {
        auto f = open_out(o.out);
        write_hypergraph(f, h);
    }
    const BigRational total(binomial(o.n, o.k));
    j["edges"] = h.support_size();
    j["density"] = str(h.total_weight() / total);
    if (planted) {
        const auto& a = planted->a;
        const auto& b = planted->b;
        const BigRational in_a(binomial(static_cast<long>(a.size()), o.k)), in_b(binomial(static_cast<long>(b.size()), o.k));
        j["a"] = a;
        j["density_inside_a"] = sgn(in_a) ? Json(str(edge_weight_within(h, a) / in_a)) : Json(nullptr);
        j["density_inside_b"] = sgn(in_b) ? Json(str(edge_weight_within(h, b) / in_b)) : Json(nullptr);
        if (!o.planted_out.empty()) {
            auto f = open_out(o.planted_out);
            for (std::size_t i = 0; i < a.size(); ++i) f << (i ? " " : "") << a[i];
            f << '\n';
        }
    }
    j["pass"] = true;
    return j;
}

std::vector<BigRational> random_type_z(int r, CounterRng& rng) {
    std::vector<BigRational> e;
    for (int i = 0; i < r; ++i) e.push_back(ratio(static_cast<long>(rng.below(199)) - 99, 400));
    std::vector<BigRational> z;
    for (int i = 0; i < r; ++i) z.push_back(ratio(1, 2) + e[static_cast<std::size_t>(i)] - e[static_cast<std::size_t>((i + 1) % r)]);
    return z;
}

Json verify_identity(const Options& o) {
    const BigRational p = parse_exact(o.p, "p");
    Json j = base_report("verify identity", "type-z cuts of C_k(n,p) have expected crossing density exactly p",
                         {{"r", o.r}, {"k", o.k}, {"p", str(p)}, {"samples", o.samples}, {"seed", o.seed}}, o);
    CounterRng rng(o.seed, Stream::test_data);
    std::size_t exact = 0;
    Json failures = Json::array();
    for (std::size_t s = 0; s < o.samples; ++s) {
        const auto z = random_type_z(o.r, rng);
        const BigRational d = type_z_density(o.r, o.k, p, z);
        if (d == p) ++exact;
        else if (failures.size() < 5) failures.push_back({{"z", str_list(z)}, {"density", str(d)}});
    }
    j["samples_exact"] = exact;
    j["failures"] = failures;
    bool pass = exact == o.samples;
    if (o.r <= kMonomialMaxR && o.k >= 2) {
        const auto coeff = monomial_coefficients(o.r, o.k);
        const BigRational singleton = BigRational(binomial(o.r - 1, o.k - 1)) * ratio(2, o.k);
        bool higher_zero = true, singletons_ok = true;
        for (const auto& [mask, c] : coeff) {
            if (std::popcount(mask) >= 2 && sgn(c) != 0) higher_zero = false;
            if (std::popcount(mask) == 1 && c != singleton) singletons_ok = false;
        }
        j["monomials"] = {{"higher_order_coefficients_zero", higher_zero},
                          {"singleton_coefficient", str(singleton) + "*p"},
                          {"singletons_match", singletons_ok}};
        pass = pass && higher_zero && singletons_ok;
    }
    j["pass"] = pass;
    return j;
}

Json verify_structure(const Options& o) {
    const BigRational p = parse_exact(o.p, "p");
    const StructureReport rep = verify_structure_theorem(o.t, o.k, p);
    Json j = base_report("verify structure", "solutions of the balanced fractional cut system are affine combinations of u and v(A)",
                         {{"t", o.t}, {"k", o.k}, {"p", str(p)}}, o);
    j["planted_vectors"] = rep.planted_vectors;
    j["all_are_solutions"] = rep.all_are_solutions;
    j["affine_point_rank"] = rep.affine_point_rank;
    j["affine_direction_dimension"] = rep.affine_direction_dim;
    j["system_rank"] = rep.system_rank;
    j["nullity"] = rep.nullity;
    j["nullspace_in_span"] = rep.nullspace_in_span;
    j["pass"] = rep.pass;
    return j;
}

Json verify_cuts(const Options& o) {
    auto f = open_in(o.in);
    const WeightedHypergraph h = read_hypergraph(f);
    const BigRational p = parse_rational(o.p);
    const double tol = parse_tolerance(o.tolerance);
    EdgeModel model{p, std::nullopt};
    if (!o.planted.empty()) model.planted_a = read_vertex_set(o.planted);
    std::vector<BigRational> alpha = o.alpha.empty() ? std::vector<BigRational>(static_cast<std::size_t>(h.k()), ratio(1, h.k())) : parse_alpha(o.alpha);
    Json config{{"in", o.in}, {"p", str(p)}, {"alpha", str_list(alpha)}, {"trials", o.trials}, {"seed", o.seed}, {"tolerance", tol},
                {"variance_model", model.planted_a ? "planted" : "uniform"}};
    if (model.planted_a) config["planted"] = o.planted;
    Json j = base_report("verify cuts", "cut weights e(V_1..V_r) match p n^k sum prod alpha_i on random cuts", config, o);
    const StatisticsReport rep = check_P_alpha(h, model, alpha, o.trials, o.seed, tol);
    j["n"] = h.n();
    j["k"] = h.k();
    j["statistics"] = statistics_json(rep);
    j["pass"] = rep.pass;
    return j;
}

Json verify_d1(const Options& o) {
    auto f = open_in(o.in);
    const WeightedHypergraph h = read_hypergraph(f);
    const BigRational p = parse_rational(o.p);
    const double tol = parse_tolerance(o.tolerance);
    Json config{{"in", o.in}, {"p", str(p)}, {"seed", o.seed}, {"tolerance", tol}};
    StatisticsReport rep;
    if (!o.planted.empty()) {
        config["set"] = o.planted;
        rep = check_D1_on_set(h, p, read_vertex_set(o.planted), tol);
    } else {
        std::vector<int> sizes = o.sizes;
        if (sizes.empty()) sizes = {h.n() / 4, h.n() / 2, 3 * h.n() / 4, h.n()};
        config["sizes"] = sizes;
        config["trials"] = o.trials;
        rep = check_D1(h, p, sizes, o.trials, o.seed, tol);
    }
    Json j = base_report("verify d1", "e(U) = (p/k!)|U|^k + o(n^k) for vertex sets U", config, o);
    j["n"] = h.n();
    j["k"] = h.k();
    j["statistics"] = statistics_json(rep);
    j["pass"] = rep.pass;
    return j;
}

Json cmd_solve(const Options& o) {
    const BigRational p = parse_exact(o.p, "p");
    const SolutionSpace s = solution_space(o.t, o.k, p);
    Json j = base_report("solve", "solution space of A_{t,k,balanced} x = p (t/k)^k", {{"t", o.t}, {"k", o.k}, {"p", str(p)}, {"out", o.out}}, o);
    j["columns"] = s.particular.size();
    j["system_rank"] = s.system_rank;
    j["nullity"] = s.nullity();
    if (!o.out.empty()) {
        // particular solution first, then each nullspace basis vector, as consecutive vector records
        auto f = open_out(o.out);
        write_vector(f, o.t, o.k, str(p), s.particular);
        for (const auto& b : s.nullspace_basis) write_vector(f, o.t, o.k, "-", b);
    }
    j["pass"] = true;
    return j;
}

Json cmd_cutnorm(const Options& o) {
    auto f1 = open_in(o.in);
    auto f2 = open_in(o.second);
    const WeightedGraph g1 = read_graph(f1), g2 = read_graph(f2);
    const CutNormResult r = cut_norm(g1, g2, o.heuristic, o.seed, o.restarts);
    Json config{{"first", o.in}, {"second", o.second}, {"heuristic", o.heuristic}};
    if (o.heuristic) {
        config["seed"] = o.seed;
        config["restarts"] = o.restarts;
    }
    Json j = base_report("cutnorm", "d_box(G1,G2) = max_{S,T} |e_G1(S,T) - e_G2(S,T)| / n^2", config, o);
    j["n"] = g1.n();
    j["value"] = str(r.value);
    j["value_approx"] = to_double(r.value);
    j["exact"] = r.exact;
    j["bound"] = r.exact ? "exact" : "lower";
    j["s"] = r.s;
    j["t"] = r.t;
    j["pass"] = true;
    return j;
}

Json cmd_quotient(const Options& o) {
    auto f = open_in(o.in);
    const WeightedGraph g = read_graph(f);
    const WeightedGraph q = quotient_graph(g, consecutive_equipartition(g.n(), o.t));
    Json j = base_report("quotient", "quotient graph G[P] over the consecutive equipartition", {{"in", o.in}, {"t", o.t}, {"out", o.out}}, o);
    if (!o.out.empty()) {
        auto out = open_out(o.out);
        write_graph(out, q);
    }
    j["n"] = g.n();
    if (g.n() <= kCutNormExactMax) {
        const auto d = cut_norm(g, q);
        j["cut_norm_to_quotient"] = str(d.value);
    }
    j["pass"] = true;
    return j;
}

Json cmd_density(const Options& o) {
    auto f = open_in(o.in);
    const WeightedHypergraph h = read_hypergraph(f);
    const DensityVector d = density_vector(h, consecutive_equipartition(h.n(), o.t));
    Json config{{"in", o.in}, {"t", o.t}, {"out", o.out}};
    std::optional<BigRational> p;
    if (!o.p.empty() && o.p != "-") {
        p = parse_rational(o.p);
        config["p"] = str(*p);
    }
    Json j = base_report("density", "density vector x_P of the consecutive equipartition", config, o);
    if (!o.out.empty()) {
        auto out = open_out(o.out);
        write_vector(out, d.t, d.k, p ? str(*p) : "-", d.entries);
    }
    j["entries"] = d.entries.size();
    j["exceeds_one"] = d.exceeds_one;
    bool pass = true;
    if (p && d.t % d.k == 0) {
        const bool solves = PstarSystem(d.t, d.k, *p).accepts(d.entries);
        j["solves_balanced_system"] = solves;
        pass = solves;
    }
    j["pass"] = pass;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qrcut: exact and Monte Carlo checks of balanced cut properties of hypergraphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    app.add_option("--seed", o.seed, "64-bit seed for all random draws")->capture_default_str();
    app.add_option("--tolerance", o.tolerance, "z-score tolerance for Monte Carlo checks (rational)")->capture_default_str();
    app.add_option("--threads", o.threads, "Worker thread cap (0 = hardware concurrency)")->capture_default_str();

    auto* rank = app.add_subcommand("rank", "Exact rank of A_{t,k,v} against the closed-form prediction");
    rank->add_option("--t", o.t)->required();
    rank->add_option("--k", o.k)->required();
    rank->add_option("--v", o.v, "Block sizes, comma separated")->required()->delimiter(',');

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues lambda(j) of A^T A for balanced A");
    spectrum->add_option("--t", o.t)->required();
    spectrum->add_option("--k", o.k)->required();
    spectrum->add_flag("--check-gram", o.gram, "Also verify A^T A = sum alpha_i W_i entrywise");

    auto* goodfn = app.add_subcommand("goodfn", "Closed form P_j(k) and brute-force good-function count");
    goodfn->add_option("--j", o.j)->required();
    goodfn->add_option("--k", o.k)->required();
    goodfn->add_flag("--brute", o.brute);

    auto* sample = app.add_subcommand("sample", "Sample G_k(n,p) or C_k(n,p) to a hypergraph file");
    sample->add_option("kind", o.kind)->required()->check(CLI::IsMember({"gnp", "ckp"}));
    sample->add_option("--n", o.n)->required();
    sample->add_option("--k", o.k)->required();
    sample->add_option("--p", o.p)->capture_default_str();
    sample->add_option("--out", o.out, "Hypergraph output file");
    sample->add_option("--planted-out", o.planted_out, "Write the planted set A (ckp only)");
    sample->add_flag("--shuffle", o.shuffle, "Permute vertices so A is not {1..n/2} (ckp only)");

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", o.suite)->required()->check(CLI::IsMember({"identity", "structure", "cuts", "d1"}));
    verify->add_option("--r", o.r);
    verify->add_option("--k", o.k);
    verify->add_option("--t", o.t);
    verify->add_option("--p", o.p)->capture_default_str();
    verify->add_option("--samples", o.samples)->capture_default_str();
    verify->add_option("--in", o.in, "Hypergraph file (cuts, d1)");
    verify->add_option("--alpha", o.alpha, "Cut shape, comma separated (cuts)")->delimiter(',');
    verify->add_option("--trials", o.trials)->capture_default_str();
    verify->add_option("--planted", o.planted, "Vertex set file: planted A for the variance model (cuts) or the set U to test (d1)");
    verify->add_option("--sizes", o.sizes, "Subset sizes (d1)")->delimiter(',');

    auto* solve = app.add_subcommand("solve", "Solution space of the balanced fractional cut system");
    solve->add_option("--t", o.t)->required();
    solve->add_option("--k", o.k)->required();
    solve->add_option("--p", o.p)->capture_default_str();
    solve->add_option("--out", o.out, "Vector file: particular solution then nullspace basis");

    auto* cutnorm = app.add_subcommand("cutnorm", "Cut distance between two weighted graphs");
    cutnorm->add_option("first", o.in)->required();
    cutnorm->add_option("second", o.second)->required();
    cutnorm->add_flag("--heuristic", o.heuristic, "Allow the lower-bound heuristic above the exact size limit");
    cutnorm->add_option("--restarts", o.restarts)->capture_default_str();

    auto* quotient = app.add_subcommand("quotient", "Quotient graph over the consecutive equipartition into t parts");
    quotient->add_option("--in", o.in)->required();
    quotient->add_option("--t", o.t)->required();
    quotient->add_option("--out", o.out);

    auto* density = app.add_subcommand("density", "Density vector of a hypergraph over the consecutive equipartition");
    density->add_option("--in", o.in)->required();
    density->add_option("--t", o.t)->required();
    density->add_option("--out", o.out);
    density->add_option("--p", o.p, "If given, also check the vector against the balanced system");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    // density has no default p; the other subcommands keep 1/4
    if (density->parsed() && density->count("--p") == 0) o.p.clear();

    try {
        set_worker_threads(o.threads);
        Json report;
        if (rank->parsed()) report = cmd_rank(o);
        else if (spectrum->parsed()) report = cmd_spectrum(o);
        else if (goodfn->parsed()) report = cmd_goodfn(o);
        else if (sample->parsed()) report = cmd_sample(o);
        else if (verify->parsed()) {
            if (o.suite == "identity") {
                if (o.r <= 0 || o.k <= 0) throw std::invalid_argument("verify identity needs --r and --k");
                report = verify_identity(o);
            } else if (o.suite == "structure") {
                if (o.t <= 0 || o.k <= 0) throw std::invalid_argument("verify structure needs --t and --k");
                report = verify_structure(o);
            } else {
                if (o.in.empty()) throw std::invalid_argument("verify " + o.suite + " needs --in");
                report = o.suite == "cuts" ? verify_cuts(o) : verify_d1(o);
            }
        } else if (solve->parsed()) report = cmd_solve(o);
        else if (cutnorm->parsed()) report = cmd_cutnorm(o);
        else if (quotient->parsed()) report = cmd_quotient(o);
        else if (density->parsed()) report = cmd_density(o);
        emit(report, o.format);
        return report.value("pass", false) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
