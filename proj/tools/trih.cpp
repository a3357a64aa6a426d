// trih — tropical intersection homology of canonical compactifications of
// tropical fan cycles, their toric Chow/Minkowski pairing, and the
// verification reports tying the two together.
//
//   trih check  <file> [--geometric]
//   trih chow   <file>
//   trih hcoh   <file>
//   trih ih     <file> [--structure native|barycentric]
//   trih verify <file> [--all|--theorem61|--duality|--subdivision|--kunneth other]
//
// JSON report on stdout, diagnostics on stderr. Exit codes: 0 pass,
// 1 check failure, 2 input error. TRIH_THREADS caps internal parallelism.

#include <CLI11.hpp>
#include <json.hpp>

#include "trih/chow.hpp"
#include "trih/compactified.hpp"
#include "trih/ihomology.hpp"
#include "trih/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace trih;

namespace {

struct Options {
    std::string path;
    std::string other;
    std::string structure = "barycentric";
    bool geometric = false;
    bool pretty = false;
    int max_dim = 4;
    bool all = false, theorem61 = false, duality = false, subdivision = false;
};

struct Check {
    std::string name;
    bool pass;
    std::string details;
};

json table_json(const DimensionTable& t) {
    json j = json::object();
    for (int p = 0; p <= t.d; ++p)
        for (int q = 0; q <= t.d; ++q)
            j[std::to_string(p) + "," + std::to_string(q)] = t.at(p, q);
    return j;
}

bool looks_like_table(const json& j) {
    if (!j.is_object() || j.empty()) return false;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key().find(',') == std::string::npos || !it.value().is_number_integer())
            return false;
    return true;
}

void print_pretty_table(std::ostream& os, const json& j) {
    int d = 0;
    for (auto it = j.begin(); it != j.end(); ++it)
        d = std::max(d, std::stoi(it.key().substr(0, it.key().find(','))));
    os << " (rows p, cols q)\n";
    for (int p = 0; p <= d; ++p) {
        os << "   ";
        for (int q = 0; q <= d; ++q) {
            std::string key = std::to_string(p) + "," + std::to_string(q);
            os << (j.contains(key) ? j[key].get<int>() : 0) << (q == d ? "\n" : " ");
        }
    }
}

int emit(const Options& opt, const std::string& command, const std::string& digest,
         const json& tables, const std::vector<Check>& checks) {
    bool failed = false;
    json j;
    j["command"] = command;
    j["digest"] = digest;
    j["tables"] = tables;
    j["checks"] = json::array();
    for (const Check& c : checks) {
        failed = failed || !c.pass;
        json cj;
        cj["name"] = c.name;
        cj["status"] = c.pass ? "pass" : "fail";
        cj["details"] = c.details;
        j["checks"].push_back(cj);
    }
    if (opt.pretty) {
        std::cout << "trih " << command << "  [" << digest << "]\n";
        for (auto it = tables.begin(); it != tables.end(); ++it) {
            std::cout << "  " << it.key();
            if (looks_like_table(it.value())) print_pretty_table(std::cout, it.value());
            else std::cout << ": " << it.value().dump() << "\n";
        }
        for (const Check& c : checks)
            std::cout << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name
                      << (c.details.empty() ? "" : "  (" + c.details + ")") << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    return failed ? 1 : 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// guard against inputs whose exterior powers outgrow desk scale
void guard_size(const TropicalFanCycle& c, int max_dim) {
    if (c.dim > max_dim)
        throw ParseError("cycle dimension " + std::to_string(c.dim) +
                         " exceeds --max-dim " + std::to_string(max_dim));
    if (c.fan.rank > 2 * max_dim)
        throw ParseError("lattice rank " + std::to_string(c.fan.rank) +
                         " exceeds 2 * --max-dim");
}

std::vector<Check> to_checks(const std::vector<CheckLine>& lines) {
    std::vector<Check> out;
    for (const CheckLine& l : lines) out.push_back({l.name, l.pass, l.details});
    return out;
}

int run_check(const Options& opt, const FanCycleFile& file, const std::string& digest) {
    std::vector<Check> checks;
    json tables = json::object();
    TropicalFanCycle cycle;
    try {
        Fan fan = build_fan(file.rank, file.rays, file.cones);
        checks.push_back({"fan axioms and unimodularity", true, ""});
        if (opt.geometric) {
            check_fan_geometric(fan);
            checks.push_back({"geometric cone intersections", true, ""});
        }
        std::map<int, Integer> w;
        for (size_t i = 0; i < file.cones.size(); ++i) {
            ConeKey key = file.cones[i];
            std::sort(key.begin(), key.end());
            w[fan.cone_index(key)] = file.weights[i];
        }
        int d = fan.dimension();
        bool pure = true;
        for (int m : fan.maximal) pure = pure && fan.dim(m) == d;
        checks.push_back({"pure-dimensional", pure, ""});
        BalanceReport rep = is_balanced(fan, MinkowskiWeight{d, w});
        std::string viol;
        for (int q : rep.violations) viol += (viol.empty() ? "" : ", ") + fan.cone_name(q);
        checks.push_back({"balancing", rep.balanced,
                          rep.balanced ? "" : "violations at " + viol});
        if (pure && rep.balanced) {
            cycle = make_cycle(std::move(fan), std::move(w));
            guard_size(cycle, opt.max_dim);
            CompactifiedCellComplex x = canonical_compactification(cycle);
            checks.push_back({"regular at infinity", is_regular_at_infinity(x), ""});
        }
    } catch (const std::invalid_argument& e) {
        checks.push_back({"validity", false, e.what()});
    }
    return emit(opt, "check", digest, tables, checks);
}

TropicalFanCycle valid_cycle_or_throw(const FanCycleFile& file, int max_dim) {
    TropicalFanCycle c = to_cycle(file);
    guard_size(c, max_dim);
    return c;
}

int run_tables(const Options& opt, const std::string& which, const FanCycleFile& file,
               const std::string& digest) {
    std::vector<Check> checks;
    json tables = json::object();
    TropicalFanCycle cycle;
    try {
        cycle = valid_cycle_or_throw(file, opt.max_dim);
    } catch (const std::invalid_argument& e) {
        checks.push_back({"validity", false, e.what()});
        return emit(opt, which, digest, tables, checks);
    }
    if (which == "chow") {
        DimensionTable t = predicted_ih(cycle);
        tables["chow"] = table_json(t);
        json detail = json::object();
        json dims = json::array();
        for (int p = 0; p <= cycle.dim; ++p) dims.push_back(ch_group(cycle.fan, p).dim);
        detail["ch_dims"] = dims;
        for (int p = 0; p <= cycle.dim; ++p) {
            PairingData pd = pairing_and_num(cycle, p);
            json pj;
            json bp = json::array(), bq = json::array();
            for (int c : pd.basis_p) bp.push_back(cycle.fan.cone_name(c));
            for (int c : pd.basis_q) bq.push_back(cycle.fan.cone_name(c));
            pj["basis_p"] = bp;
            pj["basis_q"] = bq;
            json mat = json::array();
            for (int i = 0; i < pd.basis_matrix.rows(); ++i) {
                json row = json::array();
                for (int j = 0; j < pd.basis_matrix.cols(); ++j)
                    row.push_back(to_string(pd.basis_matrix.at(i, j)));
                mat.push_back(row);
            }
            pj["matrix"] = mat;
            pj["rank"] = pd.rank;
            pj["num_dim"] = pd.num_dim;
            detail[std::to_string(p)] = pj;
        }
        tables["pairing"] = detail;
    } else if (which == "hcoh") {
        CompactifiedCellComplex x = canonical_compactification(cycle);
        CoefficientTable table(x);
        DimensionTable t = hcoh_table(table);
        tables["hcoh"] = table_json(t);
    } else {
        CompactifiedCellComplex x = canonical_compactification(cycle);
        Structure s = opt.structure == "native" ? Structure::native : Structure::barycentric;
        DimensionTable t = ih_table(x, s);
        tables["ih"] = table_json(t);
    }
    return emit(opt, which, digest, tables, checks);
}

int run_verify(const Options& opt, const FanCycleFile& file, const std::string& digest) {
    std::vector<Check> checks;
    json tables = json::object();
    TropicalFanCycle cycle;
    try {
        cycle = valid_cycle_or_throw(file, opt.max_dim);
    } catch (const std::invalid_argument& e) {
        checks.push_back({"validity", false, e.what()});
        return emit(opt, "verify", digest, tables, checks);
    }
    CompactifiedCellComplex x = canonical_compactification(cycle);

    bool t61 = opt.theorem61 || opt.all;
    bool dual = opt.duality || opt.all;
    bool subdiv = opt.subdivision || opt.all;

    if (t61) {
        DimensionTable ih = ih_table(x, Structure::barycentric);
        DimensionTable pred = predicted_ih(cycle);
        tables["ih"] = table_json(ih);
        tables["predicted"] = table_json(pred);
        bool pass = true;
        std::string first;
        for (int p = 0; p <= ih.d && pass; ++p)
            for (int q = 0; q <= ih.d && pass; ++q)
                if (ih.at(p, q) != pred.at(p, q)) {
                    pass = false;
                    first = "first difference at (" + std::to_string(p) + "," +
                            std::to_string(q) + "): " + std::to_string(ih.at(p, q)) +
                            " vs " + std::to_string(pred.at(p, q));
                }
        checks.push_back({"theorem61: ih table = chow/num diagonal", pass, first});
    }
    if (dual)
        for (const CheckLine& l : verify_duality(x))
            checks.push_back({"duality: " + l.name, l.pass, l.details});
    if (subdiv)
        for (const CheckLine& l : verify_subdivision(x))
            checks.push_back({"subdivision: " + l.name, l.pass, l.details});
    if (!opt.other.empty()) {
        FanCycleFile f2 = load_fan_cycle(opt.other);
        TropicalFanCycle c2 = valid_cycle_or_throw(f2, opt.max_dim);
        TropicalFanCycle prod = product(cycle, c2);
        guard_size(prod, opt.max_dim);
        DimensionTable ta = ih_table(x, Structure::barycentric);
        DimensionTable tb = ih_table(canonical_compactification(c2), Structure::barycentric);
        DimensionTable tp = ih_table(canonical_compactification(prod), Structure::barycentric);
        DimensionTable conv = convolve(ta, tb);
        tables["product"] = table_json(tp);
        tables["convolution"] = table_json(conv);
        bool pass = tp == conv;
        std::string detail;
        if (!pass)
            for (int p = 0; p <= tp.d && detail.empty(); ++p)
                for (int q = 0; q <= tp.d && detail.empty(); ++q)
                    if (tp.at(p, q) != conv.at(p, q))
                        detail = "first difference at (" + std::to_string(p) + "," +
                                 std::to_string(q) + ")";
        checks.push_back({"kunneth: product table = convolution", pass, detail});
    }
    return emit(opt, "verify", digest, tables, checks);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tropical intersection homology of compactified fan cycles"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", opt.path, "fan-cycle JSON file")->required();
        sub->add_flag("--pretty", opt.pretty, "human-readable rendering");
        sub->add_option("--max-dim", opt.max_dim, "desk-scale guard (default 4)");
    };

    CLI::App* c_check = app.add_subcommand("check", "validate a fan-cycle file");
    add_common(c_check);
    c_check->add_flag("--geometric", opt.geometric, "certify cone intersections exactly");

    CLI::App* c_chow = app.add_subcommand("chow", "Chow/Num dimension table and pairing");
    add_common(c_chow);
    CLI::App* c_hcoh = app.add_subcommand("hcoh", "tropical cohomology table");
    add_common(c_hcoh);
    CLI::App* c_ih = app.add_subcommand("ih", "tropical intersection homology table");
    add_common(c_ih);
    c_ih->add_option("--structure", opt.structure, "native|barycentric (default barycentric)")
        ->check(CLI::IsMember({"native", "barycentric"}));

    CLI::App* c_verify = app.add_subcommand("verify", "verification report");
    add_common(c_verify);
    c_verify->add_flag("--all", opt.all, "theorem61 + duality + subdivision");
    c_verify->add_flag("--theorem61", opt.theorem61, "ih table equals chow/num prediction");
    c_verify->add_flag("--duality", opt.duality, "Poincare duality of dimensions");
    c_verify->add_flag("--subdivision", opt.subdivision, "native vs barycentric structure");
    c_verify->add_option("--kunneth", opt.other, "second fan-cycle file for the product check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::string bytes = read_file(opt.path);
        std::string digest = fnv1a_digest(bytes);
        FanCycleFile file = parse_fan_cycle(bytes);
        if (c_check->parsed()) return run_check(opt, file, digest);
        if (c_chow->parsed()) return run_tables(opt, "chow", file, digest);
        if (c_hcoh->parsed()) return run_tables(opt, "hcoh", file, digest);
        if (c_ih->parsed()) return run_tables(opt, "ih", file, digest);
        return run_verify(opt, file, digest);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
