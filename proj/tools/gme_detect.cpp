// gme_detect: command-line GME certification for small multipartite
// states. Subcommands: verdict, scan, tensor, selftest.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gme/io.hpp"
#include "gme/selftest.hpp"

namespace {

struct StateOptions {
    std::string input;
    std::string family;
    int n = 0;
    int d = 2;
    double x = 1.0;
};

struct ParamOptions {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    std::string placement = "disjoint";
};

void add_state_options(CLI::App* cmd, StateOptions& s, bool with_noise) {
    cmd->add_option("--input", s.input, "state descriptor JSON file");
    cmd->add_option("--family", s.family, "named family: ghz | w | paper_332");
    cmd->add_option("--n", s.n, "party count for named families");
    cmd->add_option("--d", s.d, "local dimension for named families");
    if (with_noise)
        cmd->add_option("--x", s.x, "white-noise visibility for named families (default 1)");
}

void add_param_options(CLI::App* cmd, ParamOptions& p) {
    cmd->add_option("--alpha", p.alpha, "alpha block weight");
    cmd->add_option("--beta", p.beta, "beta block weight");
    cmd->add_option("--gamma", p.gamma, "gamma block weight (tripartite only)");
    cmd->add_option("--placement", p.placement, "beta block placement: disjoint | leading-overlap")
        ->check(CLI::IsMember({"disjoint", "leading-overlap"}));
}

gme::CriterionParams to_params(const ParamOptions& p) {
    gme::CriterionParams out;
    out.alpha = p.alpha;
    out.beta = p.beta;
    out.gamma = p.gamma;
    out.placement = p.placement == "leading-overlap" ? gme::BlockPlacement::LeadingOverlap
                                                     : gme::BlockPlacement::Disjoint;
    return out;
}

int default_party_count(const std::string& family) {
    if (family == "paper_332") return 3;
    return family == "w" ? 3 : 4;
}

gme::KetExpression resolve_ket(const StateOptions& s) {
    int n = s.n > 0 ? s.n : default_party_count(s.family);
    return gme::resolve_family(s.family, n, s.d);
}

// Resolve a density matrix from either an input descriptor or a named
// family; validation failures are input errors (exit 2).
gme::DensityMatrix resolve_state(const StateOptions& s) {
    if (s.input.empty() == s.family.empty())
        throw std::invalid_argument("provide exactly one of --input or --family");
    gme::DensityMatrix rho =
        s.input.empty() ? gme::white_noise_mix(resolve_ket(s), s.x)
                        : gme::load_state_descriptor(s.input);
    gme::ValidationReport v = gme::validate(rho);
    if (!v.pass())
        throw std::invalid_argument("input state failed validation: " + v.first_violation() +
                                    " violated (hermiticity dev " +
                                    std::to_string(v.hermiticity_dev) + ", trace dev " +
                                    std::to_string(v.trace_dev) + ", min eigenvalue " +
                                    std::to_string(v.min_eigenvalue) + ")");
    return rho;
}

gme::Bipartition parse_split(const std::string& text, int n_parties) {
    auto bar = text.find('|');
    if (bar == std::string::npos)
        throw std::invalid_argument("split must look like 1|23");
    std::vector<int> left, right;
    for (char c : text.substr(0, bar)) left.push_back(c - '1');
    for (char c : text.substr(bar + 1)) right.push_back(c - '1');
    return gme::Bipartition(left, right, n_parties);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gme_detect: genuine multipartite entanglement tests from Weyl-basis "
                 "correlation tensors"};
    app.require_subcommand(1);

    // verdict
    auto* verdict = app.add_subcommand("verdict", "evaluate the GME criterion for one state");
    StateOptions vstate;
    ParamOptions vparams;
    std::string vformat = "text";
    add_state_options(verdict, vstate, true);
    add_param_options(verdict, vparams);
    verdict->add_option("--format", vformat, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    // scan
    auto* scan = app.add_subcommand("scan", "threshold scan over a white-noise family");
    StateOptions sstate;
    ParamOptions sparams;
    std::string sformat = "text";
    double stol = 1e-4;
    int curve_grid = 0;
    std::string split_text;
    std::string rows_json;
    bool with_reference = false;
    add_state_options(scan, sstate, false);
    add_param_options(scan, sparams);
    scan->add_option("--format", sformat, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    scan->add_option("--tol", stol, "scan tolerance (default 1e-4)");
    scan->add_option("--curve", curve_grid, "emit an F(x) = T - K curve on an N-point grid");
    scan->add_option("--split", split_text,
                     "restrict to one bipartition, e.g. 1|234 (norm vs its own bound)");
    scan->add_option("--rows", rows_json,
                     "JSON array of [alpha,beta,gamma] rows for a threshold table");
    scan->add_flag("--with-reference", with_reference,
                   "include the fixed reference lines g1, g2 in curve output");

    // tensor
    auto* tensor = app.add_subcommand("tensor", "dump correlation-tensor coefficients");
    StateOptions tstate;
    std::string tformat = "json";
    double cutoff = 1e-12;
    add_state_options(tensor, tstate, true);
    tensor->add_option("--format", tformat, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    tensor->add_option("--cutoff", cutoff, "drop coefficients with modulus <= cutoff");

    // selftest
    auto* selftest = app.add_subcommand("selftest", "run the built-in oracle battery");
    int st_samples = 1000;
    std::uint64_t st_seed = 1;
    std::string st_dims;
    selftest->add_option("--samples", st_samples, "samples per check (default 1000)");
    selftest->add_option("--seed", st_seed, "RNG seed (default 1)");
    selftest->add_option("--dims", st_dims, "restrict to one system, e.g. 3,3,2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verdict) {
            gme::DensityMatrix rho = resolve_state(vstate);
            gme::CriterionReport rep = gme::gme_verdict(rho, to_params(vparams));
            gme::write_report(std::cout, rep, gme::parse_format(vformat));
            return rep.detected ? 0 : 1;
        }

        if (*scan) {
            if (sstate.family.empty())
                throw std::invalid_argument("scan requires --family");
            gme::FamilySpec family{resolve_ket(sstate), 0.0, 1.0};
            gme::ScanOptions opts;
            opts.tol = stol;
            if (!split_text.empty())
                opts.restrict_split = parse_split(split_text, family.base.system.parties());
            gme::OutputFormat format = gme::parse_format(sformat);

            if (curve_grid > 0) {
                auto curve = gme::scan_curve(family, to_params(sparams), curve_grid, opts);
                gme::write_curve(std::cout, curve, format, with_reference);
            } else if (!rows_json.empty()) {
                auto rows = nlohmann::json::parse(rows_json);
                std::vector<gme::CriterionParams> params;
                for (const auto& row : rows) {
                    ParamOptions po;
                    po.alpha = row.at(0).get<double>();
                    po.beta = row.at(1).get<double>();
                    po.gamma = row.size() > 2 ? row.at(2).get<double>() : 0.0;
                    po.placement = sparams.placement;
                    params.push_back(to_params(po));
                }
                gme::write_scan_results(std::cout, gme::scan_table(family, params, opts), format);
            } else {
                auto res = gme::threshold_scan(family, to_params(sparams), opts);
                gme::write_scan_results(std::cout, {res}, format);
            }
            return 0;
        }

        if (*tensor) {
            gme::DensityMatrix rho = resolve_state(tstate);
            gme::write_tensor(std::cout, gme::decompose(rho), cutoff,
                              gme::parse_format(tformat));
            return 0;
        }

        if (*selftest) {
            gme::SelfTestOptions opts;
            opts.samples = st_samples;
            opts.seed = st_seed;
            if (!st_dims.empty()) {
                std::vector<int> dims;
                std::string token;
                std::istringstream ss(st_dims);
                while (std::getline(ss, token, ',')) dims.push_back(std::stoi(token));
                opts.dims = dims;
            }
            return gme::run_selftest(opts, std::cout) == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
