#include "fkmm/cli.hpp"

#include "fkmm/cohomology.hpp"
#include "fkmm/invariants.hpp"
#include "fkmm/models.hpp"
#include "fkmm/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

namespace fkmm {

int exit_code(Errc c) {
    switch (c) {
        case Errc::UnsupportedSpace:
        case Errc::UnsupportedDimension: return kExitUnsupported;
        case Errc::GapClosed: return kExitGapClosed;
        case Errc::NotAdmissible: return kExitNotAdmissible;
        case Errc::OddResolution:
        case Errc::BadSelector:
        case Errc::SyntaxError:
        case Errc::UnknownSymbol:
        case Errc::ArityError:
        case Errc::BadModelFile:
        case Errc::BadArgument: return kExitUsage;
        case Errc::NoTRDirection:
        case Errc::RankMismatch:
        case Errc::NotAntisymmetric:
        case Errc::NumericalInconsistency:
        case Errc::NoIsolatedFixedPoints:
        case Errc::NotFree:
        case Errc::OddChernParity: return kExitUndetermined;
    }
    return kExitInternal;
}

namespace {

struct Options {
    std::string space;
    int rank = 2;
    int degree = 2;
    int twist = 1;
    std::string model;
    int grid = 32;
    std::vector<std::string> params;  // name=value overrides
    std::string sweep_param;
    std::string range;
    std::string format = "text";
    std::string out;
    std::string which = "all";
    std::string curvature;
};

// Thrown when a command has already printed its diagnostics and only needs an exit code.
struct Exit {
    int code;
};

CliffordModel load_with_params(const Options& o) {
    CliffordModel m = load_model(o.model);
    for (const auto& p : o.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(Errc::BadArgument, "--param needs name=value, got '" + p + "'");
        const std::string value = p.substr(eq + 1);
        double v = 0;
        try {
            std::size_t used = 0;
            v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::logic_error&) {
            throw Error(Errc::BadArgument, "--param value is not a number: '" + p + "'");
        }
        m = m.with_param(p.substr(0, eq), v);
    }
    return m;
}

std::string status_name(ClassificationResult::Status s) {
    switch (s) {
        case ClassificationResult::Status::Empty: return "empty";
        case ClassificationResult::Status::Unique: return "unique";
        case ClassificationResult::Status::Group: return "group";
    }
    return "";
}

std::string cmd_classify(const Options& o) {
    const auto r = classify(InvolutiveSpace::parse(o.space), o.rank);
    if (o.format == "json") {
        nlohmann::json j{{"space", r.space.str()},
                         {"rank", r.rank},
                         {"status", status_name(r.status)},
                         {"value", r.value_str()},
                         {"invariant", r.invariant_name},
                         {"complete", r.complete},
                         {"product_bundle", r.product_bundle},
                         {"rendering", r.str()}};
        if (r.status == ClassificationResult::Status::Group) j["group"] = r.group.str();
        return j.dump(2) + "\n";
    }
    return r.str() + "\n";
}

std::string cmd_cohomology(const Options& o) {
    if (o.twist != 0 && o.twist != 1) throw Error(Errc::BadArgument, "--twist must be 0 or 1");
    if (o.degree < 0) throw Error(Errc::BadArgument, "--deg must be non-negative");
    const auto space = InvolutiveSpace::parse(o.space);
    const AbelianGroup g = cohomology(space, o.degree, o.twist);
    if (o.format == "json") {
        std::vector<std::string> torsion;
        for (const auto& t : g.torsion()) torsion.push_back(t.str());
        nlohmann::json j{{"space", space.str()}, {"degree", o.degree}, {"twist", o.twist},
                         {"group", g.str()},     {"free_rank", g.free_rank()}, {"torsion", torsion}};
        return j.dump(2) + "\n";
    }
    return g.str() + "\n";
}

std::string cmd_verify(const Options& o, std::ostream& err, int& code) {
    const CliffordModel m = load_with_params(o);
    const auto grid = build_grid(m.space, o.grid);
    const TrsReport r = verify_trs(m, *grid);
    std::string text;
    if (o.format == "json") {
        nlohmann::json j{{"model", m.name},
                         {"space", m.space.str()},
                         {"pass", r.pass},
                         {"tolerance", r.tolerance},
                         {"worst_parity", r.worst_parity},
                         {"worst_function", r.worst_function},
                         {"parity_location", r.parity_location},
                         {"worst_matrix", r.worst_matrix},
                         {"matrix_location", r.matrix_location}};
        text = j.dump(2) + "\n";
    } else {
        text = r.str();
    }
    if (!r.pass) {
        err << "model " << m.name << " violates time reversal\n";
        code = kExitTrs;
    }
    return text;
}

std::string cmd_invariant(const Options& o, std::ostream& err) {
    const CliffordModel m = load_with_params(o);
    const auto grid = build_grid(m.space, o.grid);
    const TrsReport trs = verify_trs(m, *grid);
    if (!trs.pass) {
        err << "model " << m.name << " violates time reversal\n" << trs.str();
        throw Exit{kExitTrs};
    }
    const ProjectorField field = ProjectorField::from_model(m, grid);
    const InvariantReport r = compute_invariants(field, m, parse_which(o.which));
    if (!o.curvature.empty()) {
        std::ofstream dump(o.curvature, std::ios::binary);
        if (!dump) throw std::runtime_error("cannot write " + o.curvature);
        dump << curvature_csv(field, grid->cycles().front());
    }
    if (o.format == "json") return to_json(r).dump(2) + "\n";
    if (o.format == "csv") return render_csv(r);
    return render_text(r);
}

std::string cmd_sweep(const Options& o, std::ostream& err) {
    const CliffordModel m = load_with_params(o);
    const auto grid = build_grid(m.space, o.grid);
    const SweepRange range = SweepRange::parse(o.range);
    // parities do not depend on parameters in any model file, but check the endpoints anyway
    for (double v : {range.start, range.stop}) {
        const TrsReport trs = verify_trs(m.with_param(o.sweep_param, v), *grid);
        if (!trs.pass) {
            err << "model " << m.name << " violates time reversal at " << o.sweep_param << " = " << format_number(v) << "\n"
                << trs.str();
            throw Exit{kExitTrs};
        }
    }
    const auto columns = sweep_columns(*grid);
    const auto rows = sweep(m, o.sweep_param, range, grid);
    for (const auto& r : rows)
        if (!r.available) err << o.sweep_param << " = " << format_number(r.value) << ": NA (" << r.note << ")\n";
    if (o.format == "json") return sweep_json(o.sweep_param, columns, rows).dump(2) + "\n";
    return sweep_csv(o.sweep_param, columns, rows);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Topological invariants of Quaternionic vector bundles over involutive spheres and tori", "fkmm"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    const auto space_opt = [&](CLI::App* c) {
        c->add_option("--space", o.space, "Involutive space, S:p,q or T:a,b,c")->required();
    };
    const auto model_opts = [&](CLI::App* c) {
        c->add_option("--model", o.model, "Model file, or builtin:<name>")->required();
        c->add_option("--grid", o.grid, "Points per direction (even, >= 8)")->capture_default_str();
    };
    const auto format_opt = [&](CLI::App* c, std::vector<std::string> allowed) {
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember(allowed))->capture_default_str();
        c->add_option("--out", o.out, "Write the output to this file instead of stdout");
    };

    auto* classify_cmd = app.add_subcommand("classify", "Classification group for a space and rank");
    space_opt(classify_cmd);
    classify_cmd->add_option("--rank", o.rank, "Rank of the bundle")->required();
    format_opt(classify_cmd, {"text", "json"});

    auto* coh_cmd = app.add_subcommand("cohomology", "Equivariant cohomology group H^deg(X, Z(twist))");
    space_opt(coh_cmd);
    coh_cmd->add_option("--deg", o.degree, "Degree")->required();
    coh_cmd->add_option("--twist", o.twist, "Coefficient twist, 0 or 1")->required();
    format_opt(coh_cmd, {"text", "json"});

    auto* inv_cmd = app.add_subcommand("invariant", "Chern numbers, Z2 indices and FKMM class of a model");
    model_opts(inv_cmd);
    inv_cmd->add_option("--param", o.params, "Parameter override name=value (repeatable)");
    inv_cmd->add_option("--which", o.which, "all, chern, z2 or fkmm")->capture_default_str();
    inv_cmd->add_option("--curvature", o.curvature, "Also write the plaquette curvature of the first cycle as CSV");
    format_opt(inv_cmd, {"text", "json", "csv"});

    auto* sweep_cmd = app.add_subcommand("sweep", "Indices and gap along a parameter range (CSV)");
    model_opts(sweep_cmd);
    sweep_cmd->add_option("--param", o.sweep_param, "Parameter to sweep")->required();
    sweep_cmd->add_option("--range", o.range, "a:b:step")->required();
    sweep_cmd->add_option("--set", o.params, "Fixed parameter override name=value (repeatable)");
    format_opt(sweep_cmd, {"csv", "json"});

    auto* verify_cmd = app.add_subcommand("verify", "Check the time-reversal parities of a model on a grid");
    model_opts(verify_cmd);
    verify_cmd->add_option("--param", o.params, "Parameter override name=value (repeatable)");
    format_opt(verify_cmd, {"text", "json"});

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "fkmm: " << e.what() << "\n";
        return kExitUsage;
    }
    if (sweep_cmd->parsed() && o.format == "text") o.format = "csv";

    int code = kExitOk;
    std::string data;
    try {
        if (classify_cmd->parsed()) data = cmd_classify(o);
        if (coh_cmd->parsed()) data = cmd_cohomology(o);
        if (inv_cmd->parsed()) data = cmd_invariant(o, err);
        if (sweep_cmd->parsed()) data = cmd_sweep(o, err);
        if (verify_cmd->parsed()) data = cmd_verify(o, err, code);
    } catch (const Exit& e) {
        return e.code;
    } catch (const Error& e) {
        err << "fkmm: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << "fkmm: " << e.what() << "\n";
        return kExitInternal;
    }

    if (o.out.empty()) {
        out << data;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!(f << data)) {
            err << "fkmm: cannot write " << o.out << "\n";
            return kExitInternal;
        }
    }
    return code;
}

}  // namespace fkmm
