#include "gme/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace gme {

using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "text") return OutputFormat::Text;
    throw std::invalid_argument("unknown output format: " + name);
}

KetExpression resolve_family(const std::string& name, int n, int d) {
    if (name == "ghz") return named_state(NamedState::GHZ, {n, d});
    if (name == "w") return named_state(NamedState::W, {n, d});
    if (name == "paper_332") return named_state(NamedState::Paper332);
    throw std::invalid_argument("unknown family name: " + name);
}

DensityMatrix parse_state_descriptor(const json& j) {
    if (!j.is_object() || !j.contains("dims"))
        throw std::invalid_argument("state descriptor: missing \"dims\"");
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    PartySystem sys(dims);
    const long D = sys.total_dim();

    if (j.contains("named")) {
        const json& named = j.at("named");
        std::string name = named.at("name").get<std::string>();
        int n = named.value("n", static_cast<int>(dims.size()));
        int d = named.value("d", dims.empty() ? 2 : dims.front());
        KetExpression ket = resolve_family(name, n, d);
        if (!(ket.system == sys))
            throw std::invalid_argument(
                "state descriptor: \"dims\" do not match the named state's dimensions");
        double x = j.value("noise_x", 1.0);
        return white_noise_mix(ket, x);
    }

    if (j.contains("matrix_re")) {
        auto re = j.at("matrix_re").get<std::vector<std::vector<double>>>();
        std::vector<std::vector<double>> im;
        if (j.contains("matrix_im")) im = j.at("matrix_im").get<std::vector<std::vector<double>>>();
        if (static_cast<long>(re.size()) != D)
            throw std::invalid_argument(
                "state descriptor: matrix size does not match the product of dims");
        Matrix m(D, D);
        for (long r = 0; r < D; ++r) {
            if (static_cast<long>(re[r].size()) != D)
                throw std::invalid_argument("state descriptor: matrix_re is not square");
            for (long c = 0; c < D; ++c) {
                double imv = 0;
                if (!im.empty()) {
                    if (static_cast<long>(im.size()) != D || static_cast<long>(im[r].size()) != D)
                        throw std::invalid_argument(
                            "state descriptor: matrix_im shape mismatch");
                    imv = im[r][c];
                }
                m(r, c) = cx(re[r][c], imv);
            }
        }
        return {sys, std::move(m)};
    }

    throw std::invalid_argument("state descriptor: need either \"named\" or \"matrix_re\"");
}

DensityMatrix load_state_descriptor(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open state descriptor: " + path);
    json j;
    in >> j;
    return parse_state_descriptor(j);
}

namespace {

json parties_1based(const std::vector<int>& ps) {
    json arr = json::array();
    for (int p : ps) arr.push_back(p + 1);
    return arr;
}

std::string fmt6(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

}  // namespace

json report_to_json(const CriterionReport& rep) {
    json bips = json::array();
    for (const BipartitionRecord& rec : rep.bipartitions) {
        bips.push_back({{"left", parties_1based(rec.split.left)},
                        {"right", parties_1based(rec.split.right)},
                        {"trace_norm", rec.trace_norm},
                        {"bound", rec.bound.value},
                        {"applicable", rec.bound.hypothesis_ok}});
    }
    return json{{"bipartitions", std::move(bips)},
                {"T", rep.score},
                {"K", rep.threshold},
                {"detected", rep.detected},
                {"caveats", rep.caveats}};
}

void write_report(std::ostream& os, const CriterionReport& rep, OutputFormat format) {
    switch (format) {
        case OutputFormat::Json:
            os << report_to_json(rep).dump(2) << '\n';
            return;
        case OutputFormat::Csv: {
            os << "left,right,trace_norm,bound,applicable,T,K,detected\n";
            os << std::setprecision(17);
            for (const BipartitionRecord& rec : rep.bipartitions) {
                std::string left, right;
                for (int p : rec.split.left) left += std::to_string(p + 1);
                for (int p : rec.split.right) right += std::to_string(p + 1);
                os << left << ',' << right << ',' << rec.trace_norm << ',' << rec.bound.value
                   << ',' << (rec.bound.hypothesis_ok ? 1 : 0) << ',' << rep.score << ','
                   << rep.threshold << ',' << (rep.detected ? 1 : 0) << '\n';
            }
            return;
        }
        case OutputFormat::Text: {
            os << "bipartition   ||N||_tr      bound         applicable\n";
            for (const BipartitionRecord& rec : rep.bipartitions)
                os << std::left << std::setw(14) << rec.split.to_string() << std::setw(14)
                   << fmt6(rec.trace_norm) << std::setw(14) << fmt6(rec.bound.value)
                   << (rec.bound.hypothesis_ok ? "yes" : "no") << '\n';
            os << "T = " << fmt6(rep.score) << "\nK = " << fmt6(rep.threshold)
               << "\ndetected: " << (rep.detected ? "yes (GME)" : "no") << '\n';
            for (const std::string& c : rep.caveats) os << "caveat: " << c << '\n';
            return;
        }
    }
}

json tensor_records(const BlochTensor& t, double cutoff) {
    const PartySystem& sys = t.system();
    json out = json::array();
    for (const auto& [mask, tensor] : t.coefficients()) {
        std::vector<int> ps = parties_of(mask);
        for (long k = 0; k < static_cast<long>(tensor.size()); ++k) {
            if (std::abs(tensor[k]) <= cutoff) continue;
            // decode per-party Weyl codes, last party fastest
            std::vector<int> codes(ps.size());
            long rem = k;
            for (int q = static_cast<int>(ps.size()) - 1; q >= 0; --q) {
                int s = sys.dims[ps[q]] * sys.dims[ps[q]] - 1;
                codes[q] = static_cast<int>(rem % s) + 1;
                rem /= s;
            }
            std::string indices;
            for (size_t q = 0; q < ps.size(); ++q) {
                int d = sys.dims[ps[q]];
                if (q) indices += ',';
                indices += std::to_string(codes[q] / d);
                indices += std::to_string(codes[q] % d);
            }
            out.push_back({{"subset", parties_1based(ps)},
                           {"indices", indices},
                           {"re", tensor[k].real()},
                           {"im", tensor[k].imag()}});
        }
    }
    return out;
}

void write_tensor(std::ostream& os, const BlochTensor& t, double cutoff, OutputFormat format) {
    json records = tensor_records(t, cutoff);
    switch (format) {
        case OutputFormat::Json:
            os << records.dump(2) << '\n';
            return;
        case OutputFormat::Csv:
            os << "subset,indices,re,im\n" << std::setprecision(17);
            for (const json& r : records) {
                std::string subset;
                for (const json& p : r.at("subset")) subset += std::to_string(p.get<int>());
                os << subset << ',' << r.at("indices").get<std::string>() << ','
                   << r.at("re").get<double>() << ',' << r.at("im").get<double>() << '\n';
            }
            return;
        case OutputFormat::Text:
            for (const json& r : records) {
                std::string subset;
                for (const json& p : r.at("subset")) {
                    if (!subset.empty()) subset += ',';
                    subset += std::to_string(p.get<int>());
                }
                os << "T(" << subset << ")[" << r.at("indices").get<std::string>()
                   << "] = " << fmt6(r.at("re").get<double>()) << " + "
                   << fmt6(r.at("im").get<double>()) << "i\n";
            }
            return;
    }
}

namespace {

const char* method_name(ScanMethod m) {
    return m == ScanMethod::ClosedFormLinear ? "closed-form-linear" : "bisection";
}

}  // namespace

json scan_result_to_json(const ScanResult& res) {
    json samples = json::array();
    for (const ScanPoint& s : res.samples)
        samples.push_back({{"x", s.x}, {"T", s.T}, {"K", s.K}});
    json j{{"alpha", res.params.alpha},
           {"beta", res.params.beta},
           {"gamma", res.params.gamma},
           {"method", method_name(res.method)},
           {"samples", std::move(samples)}};
    if (res.threshold)
        j["threshold"] = *res.threshold;
    else
        j["threshold"] = nullptr;
    if (!res.note.empty()) j["note"] = res.note;
    return j;
}

void write_scan_results(std::ostream& os, const std::vector<ScanResult>& results,
                        OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: {
            json arr = json::array();
            for (const ScanResult& r : results) arr.push_back(scan_result_to_json(r));
            os << arr.dump(2) << '\n';
            return;
        }
        case OutputFormat::Csv:
            os << "alpha,beta,gamma,threshold,method,note\n" << std::setprecision(17);
            for (const ScanResult& r : results) {
                os << r.params.alpha << ',' << r.params.beta << ',' << r.params.gamma << ',';
                if (r.threshold)
                    os << *r.threshold;
                else
                    os << "none";
                os << ',' << method_name(r.method) << ',' << r.note << '\n';
            }
            return;
        case OutputFormat::Text:
            for (const ScanResult& r : results) {
                os << "alpha=" << r.params.alpha << " beta=" << r.params.beta
                   << " gamma=" << r.params.gamma << ": ";
                if (r.threshold)
                    os << "GME for x > " << fmt6(*r.threshold);
                else
                    os << "no detection in range";
                os << " [" << method_name(r.method) << "]";
                if (!r.note.empty()) os << " (" << r.note << ")";
                os << '\n';
            }
            return;
    }
}

void write_curve(std::ostream& os, const std::vector<CurvePoint>& curve, OutputFormat format,
                 bool with_reference_lines) {
    switch (format) {
        case OutputFormat::Json: {
            json arr = json::array();
            for (const CurvePoint& c : curve) {
                json row{{"x", c.x}, {"T", c.T}, {"K", c.K}, {"F", c.F}, {"detected", c.detected}};
                if (with_reference_lines) {
                    row["g1"] = reference_line_g1(c.x);
                    row["g2"] = reference_line_g2(c.x);
                }
                arr.push_back(std::move(row));
            }
            os << arr.dump(2) << '\n';
            return;
        }
        case OutputFormat::Csv:
        case OutputFormat::Text:
            os << "x,T,K,F,detected";
            if (with_reference_lines) os << ",g1,g2";
            os << '\n' << std::setprecision(17);
            for (const CurvePoint& c : curve) {
                os << c.x << ',' << c.T << ',' << c.K << ',' << c.F << ','
                   << (c.detected ? 1 : 0);
                if (with_reference_lines)
                    os << ',' << reference_line_g1(c.x) << ',' << reference_line_g2(c.x);
                os << '\n';
            }
            return;
    }
}

}  // namespace gme
