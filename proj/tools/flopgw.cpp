#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "flopgw/classical.hpp"
#include "flopgw/extremal.hpp"
#include "flopgw/insertion_text.hpp"
#include "flopgw/qlocal.hpp"

using json = nlohmann::ordered_json;
using namespace flopgw;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoFit = 3;

json poly_json(const Poly& p)
{
    json out = json::array();
    for (int i = 0; i <= p.degree(); ++i)
        out.push_back(p.coeff(i).get_str());
    return out;
}

json ratfn_json(const RatFn& f)
{
    return json{{"num", poly_json(f.num())},
                {"den", poly_json(f.den())},
                {"q2power", f.q2power()},
                {"display", f.to_string()}};
}

json coeff_json(const std::vector<QQ>& coeffs)
{
    json out = json::array();
    for (const QQ& c : coeffs)
        out.push_back(c.get_str());
    return out;
}

json insertions_json(const std::vector<Insertion>& list)
{
    json out = json::array();
    for (const Insertion& i : list)
        out.push_back(insertion_to_string(i));
    return out;
}

void emit(const json& report, bool as_json)
{
    if (as_json) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    for (const auto& [key, value] : report.items()) {
        if (value.is_string())
            std::cout << key << ": " << value.get<std::string>() << "\n";
        else
            std::cout << key << ": " << value.dump() << "\n";
    }
}

struct DRange {
    int lo = 1, hi = 1;
};

DRange parse_drange(const std::string& text)
{
    DRange out;
    const size_t dots = text.find("..");
    if (dots == std::string::npos) {
        out.lo = out.hi = std::stoi(text);
    } else {
        out.lo = std::stoi(text.substr(0, dots));
        out.hi = std::stoi(text.substr(dots + 2));
    }
    if (out.lo < 1 || out.hi < out.lo)
        throw CLI::ValidationError("--d", "range must be of the form lo..hi with 1 <= lo <= hi");
    return out;
}

std::vector<Insertion> parse_list_or_exit(const std::string& text, const Ring& ring)
{
    std::string warning;
    auto list = parse_insertion_list(text, ring, &warning);
    if (!warning.empty())
        std::cerr << "warning: " << warning << "\n";
    return list;
}

int run_extremal(int r, const std::vector<int>& degrees, const DRange& d, bool as_json)
{
    json values = json::object();
    for (int dd = d.lo; dd <= d.hi; ++dd)
        values[std::to_string(dd)] = n_point_extremal(r, degrees, dd).get_str();
    json report{{"command", "extremal"}, {"r", r}, {"degrees", degrees}, {"values", values}};
    if (degrees.size() >= 3) {
        report["series"] = ratfn_json(extremal_series(r, degrees));
        report["N"] = compute_N(r, degrees).get_str();
    }
    emit(report, as_json);
    return kExitPass;
}

int run_npoint(int r, const std::string& insertions, int d1_max, bool as_json)
{
    const Ring& ring = Ring::get(ModelSpec::flop_local(r));
    const auto list = parse_list_or_exit(insertions, ring);
    GwEngine& engine = GwEngine::shared(r);
    const NovikovSeries series = engine.n_point_series(list, d1_max);
    json report{{"command", "npoint"},
                {"r", r},
                {"d2", series.d2},
                {"insertions", insertions_json(list)},
                {"coefficients", coeff_json(series.coeffs)}};
    const FitBounds bounds = default_fit_bounds(series.cutoff());
    try {
        const RatFn fit = fit_ratfn(series, bounds.deg_p, bounds.deg_q, bounds.guard);
        report["ratfn"] = ratfn_json(fit);
        report["continued"] = ratfn_json(continue_ratfn(fit));
    } catch (const std::runtime_error& e) {
        report["error"] = e.what();
        emit(report, as_json);
        return kExitNoFit;
    }
    emit(report, as_json);
    return kExitPass;
}

int run_verify_flop(int r, const std::string& insertions, int d1_max, bool as_json)
{
    const Ring& ring = Ring::get(ModelSpec::flop_local(r));
    const auto list = parse_list_or_exit(insertions, ring);
    FlopInvarianceReport rep;
    try {
        rep = verify_flop_invariance(r, list, d1_max);
    } catch (const NoFitError& e) {
        std::cerr << "error: " << e.what() << "; raise --d1-max\n";
        return kExitNoFit;
    } catch (const ValidationFailedError& e) {
        std::cerr << "error: " << e.what() << "; raise --d1-max\n";
        return kExitNoFit;
    }
    json report{{"command", "verify-flop"},
                {"r", r},
                {"d2", rep.d2},
                {"insertions", insertions_json(list)},
                {"coefficients", coeff_json(rep.series_x.coeffs)},
                {"ratfn", ratfn_json(rep.fit_x)},
                {"continued", ratfn_json(rep.continued)},
                {"transformed_ratfn", ratfn_json(rep.fit_f)},
                {"verdict", rep.pass ? "pass" : "fail"}};
    emit(report, as_json);
    return rep.pass ? kExitPass : kExitVerifyFail;
}

int run_defect(int r, int rprime, const std::string& insertions, bool as_json)
{
    const ModelSpec spec =
        (r == rprime) ? ModelSpec::flop_local(r) : ModelSpec::flip_local(r, rprime);
    const Ring& ring = Ring::get(spec);
    const auto list = parse_list_or_exit(insertions, ring);
    if (list.size() != 3)
        throw CLI::ValidationError("--insertions", "defect needs exactly three classes");
    for (const Insertion& i : list)
        if (i.k != 0)
            throw CLI::ValidationError("--insertions", "defect takes primary classes only");
    const QQ defect = triple_defect(list[0].cls, list[1].cls, list[2].cls);
    const QQ predicted = triple_defect_predicted(list[0].cls, list[1].cls, list[2].cls);
    json report{{"command", "defect"},
                {"r", r},
                {"rprime", rprime},
                {"insertions", insertions_json(list)},
                {"defect", defect.get_str()},
                {"predicted", predicted.get_str()},
                {"verdict", defect == predicted ? "pass" : "fail"}};
    emit(report, as_json);
    return defect == predicted ? kExitPass : kExitVerifyFail;
}

int run_isometry(int r, bool as_json)
{
    const IsometryReport rep = verify_isometry(ModelSpec::flop_local(r));
    json report{{"command", "isometry"}, {"r", r}, {"verdict", rep.pass ? "pass" : "fail"}};
    emit(report, as_json);
    return rep.pass ? kExitPass : kExitVerifyFail;
}

int run_batyrev(int r, bool as_json)
{
    const BatyrevReport rep = batyrev_check(r);
    json report{{"command", "batyrev"}, {"r", r}, {"verdict", rep.pass ? "pass" : "fail"}};
    emit(report, as_json);
    return rep.pass ? kExitPass : kExitVerifyFail;
}

int run_table(int r, int d2, int d1_max, bool as_json)
{
    const Ring& ring = Ring::get(ModelSpec::flop_local(r));
    GwEngine& engine = GwEngine::shared(r);
    const long target = virtual_dimension(r, 3, d2);
    json rows = json::array();
    int failures = 0;
    for (int i = 0; i < ring.basis_size(); ++i)
        for (int j = i; j < ring.basis_size(); ++j)
            for (int k = j; k < ring.basis_size(); ++k) {
                const long total =
                    ring.basis_degree(i) + ring.basis_degree(j) + ring.basis_degree(k);
                if (total != target)
                    continue;
                if (ring.basis_degree(i) < 1)
                    continue;
                const std::vector<Insertion> list = {
                    {0, ring.basis_element(i)}, {0, ring.basis_element(j)}, {0, ring.basis_element(k)}};
                const NovikovSeries series = engine.n_point_series(list, d1_max);
                json row{{"insertions", insertions_json(list)}};
                const FitBounds bounds = default_fit_bounds(series.cutoff());
                try {
                    const RatFn fit = fit_ratfn(series, bounds.deg_p, bounds.deg_q, bounds.guard);
                    row["ratfn"] = ratfn_json(fit);
                    row["continued"] = ratfn_json(continue_ratfn(fit));
                } catch (const std::runtime_error& e) {
                    row["error"] = e.what();
                    ++failures;
                }
                rows.push_back(row);
            }
    json report{{"command", "table"}, {"r", r}, {"d2", d2}, {"rows", rows}};
    if (as_json) {
        std::cout << report.dump(2) << "\n";
    } else {
        for (const auto& row : rows) {
            std::cout << row["insertions"].dump();
            if (row.contains("ratfn"))
                std::cout << "  ->  " << row["ratfn"]["display"].get<std::string>();
            else
                std::cout << "  ->  " << row["error"].get<std::string>();
            std::cout << "\n";
        }
    }
    return failures == 0 ? kExitPass : kExitNoFit;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact intersection theory and genus-zero Gromov-Witten invariants "
                 "of simple P^r flop local models"};
    app.require_subcommand(1);

    int r = 2;
    int rprime = -1;
    std::string insertions;
    std::string degrees_text;
    std::string d_text = "1..1";
    int d1_max = 10;
    int d2 = 1;
    bool as_json = false;

    const auto add_common = [&](CLI::App* cmd, bool needs_r = true) {
        if (needs_r)
            cmd->add_option("--r", r, "projective-space rank of the flopped center")->required();
        cmd->add_flag_callback("--json", [&] { as_json = true; }, "machine-readable output");
        cmd->add_option("--output", [&](const std::vector<std::string>& v) {
            if (v.empty())
                return false;
            if (v[0] == "json") {
                as_json = true;
                return true;
            }
            if (v[0] == "table") {
                as_json = false;
                return true;
            }
            return false;
        }, "output format: table or json");
    };

    CLI::App* cmd_extremal = app.add_subcommand("extremal", "extremal-ray n-point invariants");
    add_common(cmd_extremal);
    cmd_extremal->add_option("--degrees", degrees_text, "comma-separated insertion degrees")->required();
    cmd_extremal->add_option("--d", d_text, "curve degree or inclusive range lo..hi");

    CLI::App* cmd_npoint = app.add_subcommand("npoint", "n-point Novikov series and rational fit");
    add_common(cmd_npoint);
    cmd_npoint->add_option("--insertions", insertions, "comma-separated insertions")->required();
    cmd_npoint->add_option("--d1-max", d1_max, "series cutoff in q1");

    CLI::App* cmd_verify = app.add_subcommand("verify-flop", "check the functional equation");
    add_common(cmd_verify);
    cmd_verify->add_option("--insertions", insertions, "comma-separated insertions")->required();
    cmd_verify->add_option("--d1-max", d1_max, "series cutoff in q1");

    CLI::App* cmd_defect = app.add_subcommand("defect", "classical triple-product defect");
    add_common(cmd_defect);
    cmd_defect->add_option("--rprime", rprime, "flip co-rank (defaults to r)");
    cmd_defect->add_option("--insertions", insertions, "three primary classes")->required();

    CLI::App* cmd_isometry = app.add_subcommand("isometry", "Poincare-pairing isometry check");
    add_common(cmd_isometry);

    CLI::App* cmd_batyrev = app.add_subcommand("batyrev", "quantum-ring ideal correspondence check");
    add_common(cmd_batyrev);

    CLI::App* cmd_table = app.add_subcommand("table", "three-point generating-function table");
    add_common(cmd_table);
    cmd_table->add_option("--d2", d2, "fiber degree");
    cmd_table->add_option("--d1-max", d1_max, "series cutoff in q1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_extremal->parsed()) {
            std::vector<int> degrees;
            size_t start = 0;
            while (start <= degrees_text.size()) {
                const size_t comma = degrees_text.find(',', start);
                degrees.push_back(std::stoi(degrees_text.substr(
                    start, comma == std::string::npos ? std::string::npos : comma - start)));
                if (comma == std::string::npos)
                    break;
                start = comma + 1;
            }
            return run_extremal(r, degrees, parse_drange(d_text), as_json);
        }
        if (cmd_npoint->parsed())
            return run_npoint(r, insertions, d1_max, as_json);
        if (cmd_verify->parsed())
            return run_verify_flop(r, insertions, d1_max, as_json);
        if (cmd_defect->parsed())
            return run_defect(r, rprime < 0 ? r : rprime, insertions, as_json);
        if (cmd_isometry->parsed())
            return run_isometry(r, as_json);
        if (cmd_batyrev->parsed())
            return run_batyrev(r, as_json);
        if (cmd_table->parsed())
            return run_table(r, d2, d1_max, as_json);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InsertionParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NoAdmissibleD2Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NoFitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoFit;
    } catch (const ValidationFailedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoFit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
