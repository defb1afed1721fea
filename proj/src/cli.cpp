#include "subrepro/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>

#include "subrepro/analysis.hpp"
#include "subrepro/constructors.hpp"
#include "subrepro/error.hpp"
#include "subrepro/io.hpp"
#include "subrepro/subdivision.hpp"

namespace subrepro::cli {

namespace {

struct LoadedSymbol {
    std::string name;
    LaurentPoly symbol;
    DilationMatrix dilation;
    std::optional<RationalVector> tau;
    std::optional<int> claimed_degree;
    std::vector<std::string> notes;
};

LoadedSymbol load_builtin(const std::string& name) {
    const Builtin& b = find_builtin(name);
    return LoadedSymbol{b.name, b.symbol, b.dilation, std::nullopt, b.claimed_reproduction_degree, b.notes};
}

LoadedSymbol load_file(const std::string& path, bool force) {
    MaskFile mask = read_mask_file(path);
    DilationMatrix m(mask.dilation, force);
    std::string name = mask.name.empty() ? std::filesystem::path(path).filename().string() : mask.name;
    return LoadedSymbol{std::move(name), std::move(mask.symbol), std::move(m), std::move(mask.tau), std::nullopt, {}};
}

LoadedSymbol load_one(const std::string& file, const std::string& builtin, bool force) {
    if (!file.empty() && !builtin.empty()) throw Error(ErrorCode::ParseError, "give either a mask file or --builtin, not both");
    if (!builtin.empty()) return load_builtin(builtin);
    if (file.empty()) throw Error(ErrorCode::ParseError, "a mask file or --builtin NAME is required");
    return load_file(file, force);
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::IoError:
        case ErrorCode::UnknownName: return kParseError;
        case ErrorCode::WindowTooSmall: return kWindowTooSmall;
        case ErrorCode::Infeasible: return kInfeasible;
        default: return kInvariantViolation;
    }
}

std::optional<RationalVector> tau_option(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_rational_list(text);
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
    std::string file;
    std::string builtin;
    int cap = kDefaultCap;
    std::string tau;
    bool json = false;
    bool force = false;
};

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out) {
    const LoadedSymbol sym = load_one(args.file, args.builtin, args.force);
    AnalysisOptions options;
    options.cap = args.cap;
    options.tau = tau_option(args.tau);
    if (!options.tau) options.tau = sym.tau;
    ReproductionReport rep = analyze(sym.symbol, sym.dilation, options, sym.name);
    for (const auto& note : sym.notes) rep.notes.push_back(note);
    if (sym.claimed_degree && rep.kR) {
        const bool confirmed = *rep.kR >= *sym.claimed_degree;
        rep.notes.push_back("published claim: reproduction conditions hold for degree " +
                            std::to_string(*sym.claimed_degree) + "; computed kR = " + std::to_string(*rep.kR) +
                            (confirmed ? " (claim confirmed)" : " (claim not confirmed)"));
    }
    if (args.json) {
        out << report_to_json(rep).dump(2) << '\n';
    } else {
        out << report_to_text(rep);
    }
    return kOk;
}

struct SubdivideArgs {
    std::string file;
    std::string builtin;
    std::string poly = "1";
    unsigned steps = 3;
    std::int64_t box = 8;
    std::string tau;
    bool oracle = false;
    std::string export_path;
    bool delta = false;
    bool force = false;
};

int cmd_subdivide(const SubdivideArgs& args, std::ostream& out) {
    const LoadedSymbol sym = load_one(args.file, args.builtin, args.force);
    const std::size_t s = sym.dilation.dim();
    RationalVector tau;
    if (auto given = tau_option(args.tau)) tau = *given;
    else if (sym.tau) tau = *sym.tau;
    else tau = compute_tau(sym.symbol, sym.dilation);
    if (tau.size() != s) throw Error(ErrorCode::DimensionMismatch, "tau has the wrong length");
    if (args.box < 0) throw Error(ErrorCode::ParseError, "--box must be non-negative");
    const SupportBox box = symmetric_box(s, args.box);

    if (!args.export_path.empty()) {
        NumericGrid d0;
        d0.dim = s;
        if (args.delta) {
            d0.values.emplace(Index(s, 0), 1.0);
            d0.zero_outside = true;
        } else {
            const PolySpec pi = parse_poly_spec(args.poly, s);
            for (const auto& alpha : box_points(box)) d0.values.emplace(alpha, pi(alpha).get_d());
        }
        export_refinement(sym.symbol, sym.dilation, tau, d0, args.steps, args.export_path);
        out << "wrote " << args.export_path << " (levels 0.." << args.steps << ")\n";
        return kOk;
    }

    const PolySpec pi = parse_poly_spec(args.poly, s);
    const OracleResult res = reproduction_oracle(sym.symbol, sym.dilation, tau, pi, args.steps, box);
    if (res.pass) {
        out << "PASS " << to_string(pi.poly(), "x") << " reproduced for " << args.steps << " steps with tau = "
            << to_string(tau) << '\n';
        return kOk;
    }
    const auto& mm = *res.mismatch;
    out << "FAIL " << to_string(pi.poly(), "x") << " with tau = " << to_string(tau) << ": level " << mm.level
        << ", alpha " << to_string(mm.alpha) << ", expected " << to_string(mm.expected) << ", got "
        << to_string(mm.got) << '\n';
    return kOracleFail;
}

struct CombineArgs {
    std::vector<std::string> files;
    std::vector<std::string> builtins;
    int k = 1;
    std::string tau;
    bool free_tau = false;
    bool json = false;
    bool force = false;
};

int cmd_combine(const CombineArgs& args, std::ostream& out) {
    std::vector<LoadedSymbol> syms;
    for (const auto& b : args.builtins) syms.push_back(load_builtin(b));
    for (const auto& f : args.files) syms.push_back(load_file(f, args.force));
    if (syms.empty()) throw Error(ErrorCode::ParseError, "combine needs at least one symbol");
    for (const auto& s : syms)
        if (!(s.dilation == syms.front().dilation)) {
            throw Error(ErrorCode::DimensionMismatch, "symbols '" + s.name + "' and '" + syms.front().name +
                                                          "' use different dilation matrices");
        }
    if (args.free_tau == !args.tau.empty()) throw Error(ErrorCode::ParseError, "give exactly one of --tau and --free-tau");

    const DilationMatrix& m = syms.front().dilation;
    std::vector<LaurentPoly> symbols;
    for (const auto& s : syms) symbols.push_back(s.symbol);
    const TauMode mode = args.free_tau ? TauMode(FreeTau{}) : TauMode(FixedTau{parse_rational_list(args.tau)});
    const AffineSolution sol = affine_solver(symbols, m, args.k, mode);

    // One member of a fully resolved family is re-analyzed from scratch.
    std::optional<ReproductionResult> check;
    if (sol.residuals.empty()) {
        const LaurentPoly combo = affine_combine(symbols, sol.basepoint);
        RationalVector tau(m.dim());
        for (std::size_t l = 0; l < tau.size(); ++l) tau[l] = sol.tau[l].coeff(Index(sol.free_dim(), 0));
        check = reproduction_degree(combo, m, tau);
    }

    if (args.json) {
        Json doc = solution_to_json(sol);
        Json names = Json::array();
        for (const auto& s : syms) names.push_back(s.name);
        doc["symbols"] = std::move(names);
        if (check) doc["basepointReproductionDegree"] = check->degree;
        out << doc.dump(2) << '\n';
        return kOk;
    }
    out << "symbols:";
    for (const auto& s : syms) out << ' ' << s.name;
    out << "\nbasepoint: " << to_string(sol.basepoint) << '\n';
    out << "free directions: " << sol.free_dim() << '\n';
    for (std::size_t f = 0; f < sol.basis.size(); ++f) out << "  t" << (f + 1) << ": " << to_string(sol.basis[f]) << '\n';
    out << "tau:";
    for (const auto& t : sol.tau) out << ' ' << to_string(t, "t");
    out << '\n';
    if (sol.residuals.empty()) {
        out << "residuals: none\n";
        out << "basepoint check: kR = " << check->degree << '\n';
    } else {
        out << "residuals:\n";
        for (const auto& r : sol.residuals) out << "  j = " << to_string(r.j) << ": " << to_string(r.poly, "t") << '\n';
    }
    return kOk;
}

int cmd_builtins(std::ostream& out) {
    for (const auto& b : builtin_symbols()) out << b.name << "  " << b.description << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polynomial reproduction analysis of subdivision schemes with general dilation"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "zero conditions, tau and reproduction degree of a mask");
    analyze_cmd->add_option("mask", an.file, "mask JSON file");
    analyze_cmd->add_option("--builtin", an.builtin, "built-in symbol name");
    analyze_cmd->add_option("--cap", an.cap, "largest derivative order searched")->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--tau", an.tau, "override tau, e.g. \"1/2,0\"");
    analyze_cmd->add_flag("--json", an.json, "emit the JSON report");
    analyze_cmd->add_flag("--force", an.force, "accept a non-expanding dilation matrix");

    SubdivideArgs sd;
    auto* subdivide_cmd = app.add_subcommand("subdivide", "run the exact reproduction oracle or export refinements");
    subdivide_cmd->add_option("mask", sd.file, "mask JSON file");
    subdivide_cmd->add_option("--builtin", sd.builtin, "built-in symbol name");
    subdivide_cmd->add_option("--poly", sd.poly, "initial polynomial, e.g. \"x1*x2 - 1/2*x2^2\"");
    subdivide_cmd->add_option("--steps", sd.steps, "number of subdivision steps");
    subdivide_cmd->add_option("--box", sd.box, "initial data on [-B,B]^s");
    subdivide_cmd->add_option("--tau", sd.tau, "parametrization shift (default: from the symbol)");
    auto* oracle_flag = subdivide_cmd->add_flag("--oracle", sd.oracle, "compare with the sampled polynomial (default)");
    subdivide_cmd->add_option("--export", sd.export_path, "write per-level CSV instead")->excludes(oracle_flag);
    subdivide_cmd->add_flag("--delta", sd.delta, "export: start from the delta sequence");
    subdivide_cmd->add_flag("--force", sd.force, "accept a non-expanding dilation matrix");

    CombineArgs cb;
    auto* combine_cmd = app.add_subcommand("combine", "solve for affine combinations with prescribed reproduction");
    combine_cmd->add_option("masks", cb.files, "mask JSON files");
    combine_cmd->add_option("--builtin", cb.builtins, "built-in symbol name (repeatable, taken first)");
    combine_cmd->add_option("--k", cb.k, "target reproduction degree")->check(CLI::NonNegativeNumber);
    combine_cmd->add_option("--tau", cb.tau, "fixed tau");
    combine_cmd->add_flag("--free-tau", cb.free_tau, "let tau follow the weights");
    combine_cmd->add_flag("--json", cb.json, "emit JSON");
    combine_cmd->add_flag("--force", cb.force, "accept a non-expanding dilation matrix");

    auto* builtins_cmd = app.add_subcommand("builtins", "list built-in symbols");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kParseError;
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(an, out);
        if (subdivide_cmd->parsed()) return cmd_subdivide(sd, out);
        if (combine_cmd->parsed()) return cmd_combine(cb, out);
        if (builtins_cmd->parsed()) return cmd_builtins(out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return kParseError;
}

}  // namespace subrepro::cli
