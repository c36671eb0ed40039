// Command-line front end: classification, Muckenhoupt bounds, spectra, and
// operator application for generalized Hilbert matrices, with stable
// machine-readable output.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghm/classify.hpp"
#include "ghm/json_io.hpp"
#include "ghm/muckenhoupt.hpp"
#include "ghm/operators.hpp"
#include "ghm/sequences.hpp"
#include "ghm/spectral.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string family;
    std::string seq_file;
    double alpha = 1.0;
    double shift = 0.5;
    std::size_t k = 0;
    std::size_t scan = ghm::kDefaultScanWindow;
    std::vector<std::size_t> schedule;
    std::string format = "json";
    std::string out;
    bool strict = false;
    std::string input; // positional vector file for `apply`
};

void add_sequence_flags(CLI::App* sub, Options& o) {
    sub->add_option("--family", o.family,
                    "built-in family: standard | power | weighted-standard | "
                    "odd-linear | squared-odd");
    sub->add_option("--alpha", o.alpha, "exponent for --family power");
    sub->add_option("--shift", o.shift, "shift in (0,1) for --family power");
    sub->add_option("--seq-file", o.seq_file, "sequence file (x d lines or JSON)");
}

void add_output_flags(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "output path (default: stdout)");
}

ghm::NodeWeightSequence resolve_sequence(const CLI::App* sub, const Options& o) {
    const bool has_family = sub->count("--family") > 0;
    const bool has_file = sub->count("--seq-file") > 0;
    if (has_family == has_file)
        throw ghm::InvalidParameter("exactly one of --family / --seq-file is required");
    if (has_file) {
        if (sub->count("--alpha") || sub->count("--shift"))
            throw ghm::InvalidParameter("--alpha/--shift only apply to --family power");
        return ghm::NodeWeightSequence::from_file(o.seq_file);
    }
    if (o.family == "power") return ghm::NodeWeightSequence::power_alpha(o.alpha, o.shift);
    if (sub->count("--alpha") || sub->count("--shift"))
        throw ghm::InvalidParameter("--alpha/--shift only apply to --family power");
    if (o.family == "standard") return ghm::NodeWeightSequence::standard();
    if (o.family == "weighted-standard") return ghm::NodeWeightSequence::weighted_standard();
    if (o.family == "odd-linear") return ghm::NodeWeightSequence::odd_linear();
    if (o.family == "squared-odd") return ghm::NodeWeightSequence::squared_odd();
    throw ghm::InvalidParameter("unknown family: " + o.family);
}

nlohmann::json config_json(const std::string& command, const Options& o,
                           const ghm::NodeWeightSequence& seq) {
    nlohmann::json cfg{
        {"command", command},   {"sequence", seq.name()}, {"scan", o.scan},
        {"format", o.format},   {"strict", o.strict},
    };
    if (!o.seq_file.empty()) cfg["seq_file"] = o.seq_file;
    if (o.k != 0) cfg["k"] = o.k;
    if (!o.schedule.empty()) cfg["schedule"] = o.schedule;
    return cfg;
}

void emit(const Options& o, const std::string& payload) {
    if (o.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw ghm::Error("cannot open output file: " + o.out);
    f << payload;
}

std::string interval_csv(const ghm::BoundInterval& b) {
    std::ostringstream os;
    os.precision(17);
    os << b.lower << ",";
    if (b.finite_upper())
        os << b.upper;
    else
        os << "inf";
    return os.str();
}

int run_classify(const CLI::App* sub, Options& o) {
    const auto seq = resolve_sequence(sub, o);
    const auto rep = ghm::classify(seq, o.scan);
    if (o.format == "json") {
        nlohmann::json j = ghm::to_json(rep);
        j["version"] = kVersion;
        j["config"] = config_json("classify", o, seq);
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "# classify family=" << seq.name() << " scan=" << o.scan << "\n";
        os << "well_defined," << ghm::to_string(rep.well_defined) << "\n";
        os << "bounded," << ghm::to_string(rep.bounded) << "\n";
        os << "compact," << ghm::to_string(rep.compact) << "\n";
        os << "injective," << ghm::to_string(rep.injective) << "\n";
        os << "range_closed," << ghm::to_string(rep.range_closed) << "\n";
        os << "nashed_type," << rep.nashed_type << "\n";
        emit(o, os.str());
    }
    if (o.strict && rep.unknown_count() >= 3) return 3;
    return 0;
}

int run_bounds(const CLI::App* sub, Options& o) {
    const auto seq = resolve_sequence(sub, o);
    const std::size_t kmax = o.k == 0 ? 32 : o.k;
    const ghm::MuckenhouptScan scan(seq, o.scan);
    if (kmax > scan.window())
        throw ghm::InvalidParameter("--k exceeds the scan window");
    const auto sup = scan.sup_product_from(1);
    const auto bt = scan.btilde(1);
    if (o.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t k = 1; k <= kmax; ++k) {
            rows.push_back({{"k", k},
                            {"x", scan.x_node(k)},
                            {"N", ghm::to_json(scan.N_at_node(k))},
                            {"M", ghm::to_json(scan.M_at_node(k))},
                            {"product", ghm::to_json(scan.product_at_node(k))}});
        }
        nlohmann::json j{{"rows", rows},
                         {"sup_product", ghm::to_json(sup)},
                         {"btilde_at_1", ghm::to_json(bt)},
                         {"version", kVersion},
                         {"config", config_json("bounds", o, seq)}};
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os.precision(17);
        os << "# bounds family=" << seq.name() << " scan=" << o.scan << "\n";
        os << "# sup_product=" << interval_csv(sup) << " btilde_1=" << interval_csv(bt)
           << "\n";
        os << "k,x,N_lo,N_hi,M_lo,M_hi,prod_lo,prod_hi\n";
        for (std::size_t k = 1; k <= kmax; ++k) {
            os << k << "," << scan.x_node(k) << "," << interval_csv(scan.N_at_node(k))
               << "," << interval_csv(scan.M_at_node(k)) << ","
               << interval_csv(scan.product_at_node(k)) << "\n";
        }
        emit(o, os.str());
    }
    return 0;
}

int run_spectrum(const CLI::App* sub, Options& o) {
    const auto seq = resolve_sequence(sub, o);
    if (o.k == 0) throw ghm::InvalidParameter("spectrum requires --k >= 1");
    std::vector<std::size_t> schedule =
        o.schedule.empty() ? ghm::default_schedule(o.k) : o.schedule;
    if (o.scan < schedule.back())
        throw ghm::InvalidParameter("--scan must be >= the schedule maximum");
    const auto sw = ghm::sandwich_report(seq, o.k, schedule, o.scan);
    if (o.format == "json") {
        nlohmann::json j = ghm::to_json(sw);
        j["version"] = kVersion;
        j["config"] = config_json("spectrum", o, seq);
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        ghm::write_ladder_csv(os, sw, seq.name());
        emit(o, os.str());
    }
    return 0;
}

int run_apply(const CLI::App* sub, Options& o) {
    const auto seq = resolve_sequence(sub, o);
    std::vector<double> f;
    if (o.input == "-") {
        f = ghm::read_vector_csv(std::cin);
    } else {
        std::ifstream in(o.input);
        if (!in) throw ghm::Error("cannot open vector file: " + o.input);
        f = ghm::read_vector_csv(in);
    }
    if (f.empty()) throw ghm::InvalidParameter("input vector is empty");
    if (o.k != 0 && o.k != f.size())
        throw ghm::InvalidParameter("--k does not match the input vector length");
    const auto hf = ghm::apply_H(seq, f);
    const auto cf = ghm::apply_cesaro(seq, f);
    const auto csf = ghm::apply_cesaro_adjoint(seq, f);
    if (o.format == "json") {
        nlohmann::json j{{"K", f.size()},  {"Hf", hf},          {"Cf", cf},
                         {"Cstar_f", csf}, {"version", kVersion},
                         {"config", config_json("apply", o, seq)}};
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os.precision(17);
        os << "# K=" << f.size() << " family=" << seq.name() << "\n";
        os << "i,Hf,Cf,Cstar_f\n";
        for (std::size_t i = 0; i < f.size(); ++i)
            os << (i + 1) << "," << hf[i] << "," << cf[i] << "," << csf[i] << "\n";
        emit(o, os.str());
    }
    return 0;
}

int run_presets(Options& o) {
    nlohmann::json presets = nlohmann::json::array(
        {{{"name", "standard"},
          {"generator", "x_i = i - 1/2, d_i = 1"},
          {"behavior", "bounded, noncompact, non-closed range (type-I)"}},
         {{"name", "power"},
          {"generator", "x_i = i^alpha - shift, d_i = 1"},
          {"behavior",
           "alpha < 1 unbounded; alpha = 1 bounded noncompact; alpha > 1 compact"}},
         {{"name", "weighted-standard"},
          {"generator", "x_i = i - 1/2, d_i = 1/i"},
          {"behavior", "compact, non-closed range (type-II)"}},
         {{"name", "odd-linear"},
          {"generator", "x_i = 2i - 1, d_i = 1"},
          {"behavior", "bounded, noncompact, type-I (fractional heat sampling)"}},
         {{"name", "squared-odd"},
          {"generator", "x_i = (2i - 1)^2, d_i = 1"},
          {"behavior", "compact, type-II (heat equation sampling)"}},
         {{"name", "custom"},
          {"generator", "finite pairs from --seq-file"},
          {"behavior", "finite rank: trivially bounded, compact, closed range"}}});
    if (o.format == "json") {
        nlohmann::json j{{"presets", presets}, {"version", kVersion}};
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "name,generator,behavior\n";
        for (const auto& p : presets)
            os << p["name"].get<std::string>() << ",\"" << p["generator"].get<std::string>()
               << "\",\"" << p["behavior"].get<std::string>() << "\"\n";
        emit(o, os.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Hilbert matrix analyzer"};
    app.require_subcommand(1);
    Options o;

    CLI::App* c_classify = app.add_subcommand("classify", "verdict report for a sequence");
    add_sequence_flags(c_classify, o);
    add_output_flags(c_classify, o);
    c_classify->add_option("--scan", o.scan, "scan window (default 10000)");
    c_classify->add_flag("--strict", o.strict, "exit 3 when verdicts are mostly Unknown");

    CLI::App* c_bounds = app.add_subcommand("bounds", "N, M and Muckenhoupt products");
    add_sequence_flags(c_bounds, o);
    add_output_flags(c_bounds, o);
    c_bounds->add_option("--scan", o.scan, "scan window (default 10000)");
    c_bounds->add_option("--k", o.k, "largest node index in the table (default 32)");

    CLI::App* c_spectrum = app.add_subcommand("spectrum", "two-sided sigma_k sandwich");
    add_sequence_flags(c_spectrum, o);
    add_output_flags(c_spectrum, o);
    c_spectrum->add_option("--scan", o.scan, "scan window (default 10000)");
    c_spectrum->add_option("--k", o.k, "singular value index")->required();
    c_spectrum->add_option("--schedule", o.schedule, "truncation sizes, e.g. 4,8,16")
        ->delimiter(',');

    CLI::App* c_apply = app.add_subcommand("apply", "apply H, C, C* to a vector");
    add_sequence_flags(c_apply, o);
    add_output_flags(c_apply, o);
    c_apply->add_option("--k", o.k, "expected vector length");
    c_apply->add_option("input", o.input, "CSV vector path, or - for stdin")->required();

    CLI::App* c_presets = app.add_subcommand("presets", "list built-in families");
    add_output_flags(c_presets, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_classify->parsed()) return run_classify(c_classify, o);
        if (c_bounds->parsed()) return run_bounds(c_bounds, o);
        if (c_spectrum->parsed()) return run_spectrum(c_spectrum, o);
        if (c_apply->parsed()) return run_apply(c_apply, o);
        if (c_presets->parsed()) return run_presets(o);
    } catch (const ghm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
