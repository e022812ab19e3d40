// Command-line front end: builds chains, runs the library operations, and
// emits one JSON document per invocation on stdout. Exit codes: 0 success,
// 2 invalid input or genericity failure, 1 degeneracy/cap/internal faults.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tropbn/tropbn.hpp"

namespace {

using tropbn::json;

struct Options {
    int g = 3;
    int r = 1;
    long long d = -1;  // -1: derive a default after parsing
    long long seed = 0;
    long long scale = 1;
    int trials = 20;
    long long limit = 100000;
    bool no_bridges = false;
    std::string input_path;
};

json load_input(const Options& opts) {
    if (opts.input_path.empty()) return json();
    if (opts.input_path == "-") return json::parse(std::cin);
    std::ifstream in(opts.input_path);
    if (!in) throw std::invalid_argument("cannot open input file: " + opts.input_path);
    return json::parse(in);
}

// The chain comes from the input document (whole document or "chain" key)
// when one is present, else from the flag-selected default family.
tropbn::ChainOfLoops resolve_chain(const Options& opts, const json& input) {
    if (input.is_object() && input.contains("chain")) {
        return tropbn::chain_from_json(input.at("chain"));
    }
    if (input.is_object() && input.contains("g")) {
        return tropbn::chain_from_json(input);
    }
    return tropbn::default_chain(opts.g, opts.no_bridges);
}

long long default_degree(const Options& opts, const tropbn::ChainOfLoops& chain) {
    return opts.d >= 0 ? opts.d : chain.g();
}

// Divisor data from the input document: an explicit reduced form wins, then
// an explicit divisor (canonicalized), then a seeded random class of the
// requested degree.
tropbn::ReducedDivisor resolve_reduced(const Options& opts, const json& input,
                                       const tropbn::ChainOfLoops& chain) {
    if (input.is_object() && input.contains("reduced")) {
        tropbn::ReducedDivisor rd = tropbn::reduced_from_json(input.at("reduced"));
        tropbn::validate_reduced(chain, rd);
        return rd;
    }
    if (input.is_object() && input.contains("divisor")) {
        return tropbn::canonicalize(chain, tropbn::divisor_from_json(input.at("divisor")));
    }
    tropbn::RatRng rng(static_cast<std::uint64_t>(opts.seed));
    return tropbn::jacobi_invert(chain, tropbn::random_jac_point(chain, rng),
                                 default_degree(opts, chain));
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

int run_gen(const Options& opts) {
    emit(to_json(tropbn::default_chain(opts.g, opts.no_bridges)));
    return 0;
}

int run_check(const Options& opts) {
    tropbn::ChainOfLoops chain = resolve_chain(opts, load_input(opts));
    json doc{{"generic", chain.is_generic()}};
    if (chain.is_generic()) {
        doc["witness"] = nullptr;
    } else {
        const auto& w = *chain.genericity_witness();
        doc["witness"] = json{{"loop", w.loop},
                              {"a", w.a.convert_to<long long>()},
                              {"b", w.b.convert_to<long long>()}};
    }
    emit(doc);
    return chain.is_generic() ? 0 : 2;
}

int run_reduce(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    emit(to_json(resolve_reduced(opts, input, chain)));
    return 0;
}

int run_rank(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    tropbn::ReducedDivisor rd = resolve_reduced(opts, input, chain);
    json doc{{"rank", tropbn::rank(chain, rd)},
             {"degree", tropbn::degree(rd)},
             {"reduced", to_json(rd)}};
    emit(doc);
    return 0;
}

int run_path(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    tropbn::ReducedDivisor rd = resolve_reduced(opts, input, chain);
    emit(to_json(tropbn::lingering_path(chain, rd, opts.r)));
    return 0;
}

int run_aj(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    if (input.is_object() && input.contains("divisor")) {
        emit(to_json(tropbn::abel_jacobi(chain, tropbn::divisor_from_json(input.at("divisor")))));
    } else {
        emit(to_json(tropbn::abel_jacobi(chain, resolve_reduced(opts, input, chain))));
    }
    return 0;
}

int run_invert(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    json src = input.is_object() && input.contains("point") ? input.at("point") : input;
    if (!src.is_object() || !src.contains("coords")) {
        throw std::invalid_argument("invert needs a torus point with \"coords\"");
    }
    tropbn::JacobianPoint p = tropbn::jac_point_from_json(src);
    long long d = opts.d >= 0 ? opts.d
                  : src.contains("degree") ? src.at("degree").get<long long>()
                                           : chain.g();
    emit(to_json(tropbn::jacobi_invert(chain, p, d)));
    return 0;
}

std::vector<tropbn::TorusCell> cells_for(const Options& opts,
                                         const tropbn::ChainOfLoops& chain, long long d) {
    if (opts.r == 0) return tropbn::w0_cells(chain, d);
    return tropbn::enumerate_cells(chain, opts.r, d);
}

int run_cells(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    const long long d = default_degree(opts, chain);
    std::vector<tropbn::TorusCell> cells = cells_for(opts, chain, d);
    if (static_cast<long long>(cells.size()) > opts.limit) {
        throw tropbn::ComplexityCapExceeded(
            "cell listing has " + std::to_string(cells.size()) +
            " entries, above --limit " + std::to_string(opts.limit));
    }
    json arr = json::array();
    for (const tropbn::TorusCell& c : cells) arr.push_back(to_json(c));
    emit(json{{"count", cells.size()}, {"rho", tropbn::rho(chain.g(), opts.r, d)},
              {"cells", arr}});
    return 0;
}

int run_count(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    const long long d = default_degree(opts, chain);
    const long long rho_v = tropbn::rho(chain.g(), opts.r, d);
    json doc{{"rho", rho_v}};
    if (rho_v == 0) {
        doc["lambda"] = tropbn::lambda_count(chain.g(), opts.r, d).convert_to<long long>();
    } else {
        doc["lambda"] = nullptr;
    }
    doc["cells"] = cells_for(opts, chain, d).size();
    emit(doc);
    return 0;
}

int run_theta_facets(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    tropbn::ThetaTranslate t = tropbn::theta_divisor(chain);
    if (input.is_object() && input.contains("shift")) {
        t.shift = tropbn::pic_point_from_json(input.at("shift"));
    }
    json doc = to_json(tropbn::theta_facets(chain, t));
    doc["shift"] = to_json(t.shift);
    emit(doc);
    return 0;
}

std::vector<tropbn::ThetaTranslate> resolve_shifts(const Options& opts, const json& input,
                                                   const tropbn::ChainOfLoops& chain,
                                                   int count, tropbn::RatRng& rng) {
    if (input.is_object() && input.contains("shifts")) {
        std::vector<tropbn::ThetaTranslate> ts;
        for (const json& s : input.at("shifts")) {
            ts.push_back(tropbn::ThetaTranslate{tropbn::pic_point_from_json(s), std::nullopt});
        }
        return ts;
    }
    return tropbn::draw_generic_shifts(chain, count, rng);
}

int run_intersect(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    tropbn::RatRng rng(static_cast<std::uint64_t>(opts.seed));
    std::vector<tropbn::ThetaTranslate> ts =
        resolve_shifts(opts, input, chain, chain.g(), rng);
    std::vector<tropbn::JacIntersectionPoint> pts = tropbn::intersect_translates(chain, ts);
    json shifts = json::array();
    for (const tropbn::ThetaTranslate& t : ts) shifts.push_back(to_json(t.shift));
    emit(json{{"count", pts.size()}, {"shifts", shifts}, {"points", to_json(pts)}});
    return 0;
}

int run_bn_intersect(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    const long long d = default_degree(opts, chain);
    std::vector<tropbn::TorusCell> cells = cells_for(opts, chain, d);
    const long long rho_v = tropbn::rho(chain.g(), opts.r, d);
    tropbn::RatRng rng(static_cast<std::uint64_t>(opts.seed));
    std::vector<tropbn::ThetaTranslate> ts =
        resolve_shifts(opts, input, chain, static_cast<int>(std::max<long long>(rho_v, 0)),
                       rng);
    std::vector<tropbn::PicIntersectionPoint> pts =
        tropbn::intersect_cells_with_translates(chain, cells, ts);
    if (static_cast<long long>(pts.size()) > opts.limit) {
        throw tropbn::ComplexityCapExceeded(
            "intersection has " + std::to_string(pts.size()) + " points, above --limit " +
            std::to_string(opts.limit));
    }
    json shifts = json::array();
    for (const tropbn::ThetaTranslate& t : ts) shifts.push_back(to_json(t.shift));
    emit(json{{"cells", cells.size()},
              {"rho", rho_v},
              {"shifts", shifts},
              {"count", pts.size()},
              {"points", to_json(pts)}});
    return 0;
}

// A vertex-avoiding input class: taken from the document when present,
// sampled with the seed otherwise.
tropbn::ReducedDivisor resolve_vertex_avoiding(const Options& opts, const json& input,
                                               const tropbn::ChainOfLoops& chain) {
    if (input.is_object() && (input.contains("reduced") || input.contains("divisor"))) {
        return resolve_reduced(opts, input, chain);
    }
    tropbn::RatRng rng(static_cast<std::uint64_t>(opts.seed));
    return tropbn::sample_vertex_avoiding(chain, opts.r, default_degree(opts, chain), rng);
}

int run_local_eqns(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    tropbn::ReducedDivisor rd = resolve_vertex_avoiding(opts, input, chain);
    tropbn::NeighborhoodSpec spec = tropbn::default_neighborhood(chain);
    std::vector<tropbn::LocalThetaPair> pairs =
        tropbn::local_theta_equations(chain, rd, opts.r, spec);
    json arr = json::array();
    for (const tropbn::LocalThetaPair& pair : pairs) {
        tropbn::ThetaTranslate t = tropbn::local_pair_translate(chain, pair);
        arr.push_back(json{{"direction", pair.direction},
                           {"step", pair.step},
                           {"e", to_json(pair.e)},
                           {"e_prime", to_json(pair.e_prime)},
                           {"shift", to_json(t.shift)}});
    }
    emit(json{{"reduced", to_json(rd)},
              {"epsilon", tropbn::rat_to_json(spec.epsilon)},
              {"pairs", arr}});
    return 0;
}

int run_dj(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    tropbn::ReducedDivisor rd = resolve_vertex_avoiding(opts, input, chain);
    json arr = json::array();
    for (int j = 0; j <= opts.r; ++j) {
        arr.push_back(json{{"j", j}, {"divisor", to_json(tropbn::compute_Dj(chain, rd, opts.r, j))}});
    }
    emit(json{{"reduced", to_json(rd)}, {"representatives", arr}});
    return 0;
}

int run_verify(const Options& opts) {
    json input = load_input(opts);
    tropbn::ChainOfLoops chain = resolve_chain(opts, input);
    chain.require_generic();
    tropbn::RatRng rng(static_cast<std::uint64_t>(opts.seed));
    const int g = chain.g();

    int agreed = 0;
    json failures = json::array();
    json reports = json::array();
    for (int trial = 0; trial < opts.trials; ++trial) {
        // Integer-offset chips keep the subdivision scale small.
        tropbn::Divisor div;
        const long long deg = rng.below(2 * g + 1);
        for (long long k = 0; k < deg; ++k) {
            const long long pick = rng.below(g + 1);
            if (pick == 0) {
                tropbn::add_chip(div, tropbn::PointOnGamma::basepoint(), 1);
            } else {
                const int i = static_cast<int>(pick);
                tropbn::Rat c = chain.circumference(i);
                if (tropbn::is_integer(c)) {
                    long long span = numerator(c).convert_to<long long>();
                    tropbn::add_chip(div,
                                     tropbn::PointOnGamma::loop_point(i, tropbn::Rat(rng.below(span))),
                                     1);
                } else {
                    tropbn::add_chip(div, tropbn::PointOnGamma::loop_point(i, rng.scaled(c)), 1);
                }
            }
        }
        tropbn::CrossCheckReport report =
            tropbn::cross_check(chain, div, tropbn::OracleCaps{}, opts.scale);
        if (report.agrees()) {
            ++agreed;
        } else {
            failures.push_back(trial);
            reports.push_back(to_json(report));
        }
    }
    json doc{{"trials", opts.trials},
             {"agreed", agreed},
             {"all_agree", agreed == opts.trials},
             {"scale_multiplier", opts.scale}};
    if (!failures.empty()) {
        doc["failures"] = failures;
        doc["reports"] = reports;
    }
    emit(doc);
    return agreed == opts.trials ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Divisor theory on generic chains of loops: exact ranks, cells, "
                 "theta intersections, and a chip-firing cross-check."};
    app.require_subcommand(1);
    Options opts;

    auto add_common = [&](CLI::App* sub, bool with_rd) {
        sub->add_option("--g", opts.g, "Genus of the default chain")->check(CLI::PositiveNumber);
        sub->add_flag("--no-bridges", opts.no_bridges, "Default chain with zero-length bridges");
        sub->add_option("--input", opts.input_path, "JSON input document ('-' for stdin)");
        sub->add_option("--seed", opts.seed, "Seed for any randomized draw");
        if (with_rd) {
            sub->add_option("--r", opts.r, "Rank parameter")->check(CLI::NonNegativeNumber);
            sub->add_option("--d", opts.d, "Degree parameter");
        }
    };

    CLI::App* gen = app.add_subcommand("gen", "Emit a default chain as JSON");
    gen->add_option("--g", opts.g, "Genus")->check(CLI::PositiveNumber);
    gen->add_flag("--no-bridges", opts.no_bridges, "Zero-length bridges");
    gen->add_option("--seed", opts.seed, "Accepted for interface uniformity");

    add_common(app.add_subcommand("check", "Genericity verdict for a chain"), false);
    add_common(app.add_subcommand("reduce", "Canonical reduced form of a divisor"), true);
    add_common(app.add_subcommand("rank", "Rank of a divisor class"), true);
    add_common(app.add_subcommand("path", "Lingering lattice path of a class"), true);
    add_common(app.add_subcommand("aj", "Torus coordinates of a divisor class"), true);
    add_common(app.add_subcommand("invert", "Reduced divisor for a torus point"), true);
    CLI::App* cells = app.add_subcommand("cells", "Cells of the rank locus");
    add_common(cells, true);
    cells->add_option("--limit", opts.limit, "Maximum entries to emit");
    add_common(app.add_subcommand("count", "rho, lambda, and the cell count"), true);
    add_common(app.add_subcommand("theta-facets", "Facet description of a theta translate"),
               false);
    add_common(app.add_subcommand("intersect", "Stable intersection of g theta translates"),
               false);
    CLI::App* bn = app.add_subcommand("bn-intersect",
                                      "Rank locus cells against rho theta translates");
    add_common(bn, true);
    bn->add_option("--limit", opts.limit, "Maximum points to emit");
    add_common(app.add_subcommand("local-eqns", "Local theta equations at a class"), true);
    add_common(app.add_subcommand("dj", "Distinguished representatives D_j"), true);
    CLI::App* verify = app.add_subcommand("verify", "Cross-check against the discrete oracle");
    add_common(verify, false);
    verify->add_option("--trials", opts.trials, "Number of randomized trials")
        ->check(CLI::PositiveNumber);
    verify->add_option("--scale", opts.scale, "Extra subdivision multiplier")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("gen")) return run_gen(opts);
        if (app.got_subcommand("check")) return run_check(opts);
        if (app.got_subcommand("reduce")) return run_reduce(opts);
        if (app.got_subcommand("rank")) return run_rank(opts);
        if (app.got_subcommand("path")) return run_path(opts);
        if (app.got_subcommand("aj")) return run_aj(opts);
        if (app.got_subcommand("invert")) return run_invert(opts);
        if (app.got_subcommand("cells")) return run_cells(opts);
        if (app.got_subcommand("count")) return run_count(opts);
        if (app.got_subcommand("theta-facets")) return run_theta_facets(opts);
        if (app.got_subcommand("intersect")) return run_intersect(opts);
        if (app.got_subcommand("bn-intersect")) return run_bn_intersect(opts);
        if (app.got_subcommand("local-eqns")) return run_local_eqns(opts);
        if (app.got_subcommand("dj")) return run_dj(opts);
        if (app.got_subcommand("verify")) return run_verify(opts);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const tropbn::GenericityViolation& e) {
        std::cerr << "genericity violation: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const tropbn::DegenerateIntersection& e) {
        std::cerr << "degenerate configuration: " << e.what() << "\n";
        return 1;
    } catch (const tropbn::ComplexityCapExceeded& e) {
        std::cerr << "complexity cap: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
