// Command-line front end: loads posets and complexes, runs the verification suites,
// computes glued truncations and heart membership.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <pglue/pglue.hpp>

using namespace pglue;
using json = nlohmann::ordered_json;

namespace {

struct Config {
    std::string command;
    std::string poset_path;
    std::string complex_path, target_path, map_path;
    std::string out_s, out_r;
    std::uint64_t p = 101;
    std::uint64_t seed = 1;
    int samples = 20;
    std::string perversity;
    std::string paren = "all";
    bool json = false;
};

struct Outcome {
    Report checks;
    json extra = json::object();
    std::vector<std::string> lines;  // free-form text for the plain report
};

Perversity parse_perversity(const std::string& text, int strata) {
    Perversity p;
    if (text.empty()) return Perversity(strata, 0);
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            std::size_t used = 0;
            p.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InputError("--perversity: '" + tok + "' is not an integer");
        }
    }
    if (static_cast<int>(p.size()) != strata)
        throw InputError("--perversity has " + std::to_string(p.size()) + " entries but the stratification has " +
                         std::to_string(strata) + " strata");
    return p;
}

std::vector<ParenPtr> trees_for(const Config& cfg, int n) {
    if (cfg.paren == "all") return all_parenthesizations(0, n);
    if (cfg.paren == "combs") return {left_comb(n), right_comb(n)};
    return {parse_parenthesization(cfg.paren, n)};
}

Cx require_complex(const Config& cfg, const PosetPtr& p) {
    if (cfg.complex_path.empty()) throw InputError(cfg.command + " needs --complex");
    return load_complex(cfg.complex_path, p);
}

void append(Report& to, const Report& from) { to.insert(to.end(), from.begin(), from.end()); }

Outcome check_axioms(const Config& cfg, const PosetFile& pf) {
    const Stratification s = pf.stratification();
    if (s.count() < 2) throw InputError("check-axioms needs a stratification with at least two strata");
    Outcome out;
    for (int k = 0; k + 1 < s.count(); ++k) {
        const Recollement r(Cut::from_closed(pf.poset, s.closed(k)));
        Report rep = check_recollement_axioms(r, cfg.samples, cfg.seed);
        for (auto& c : rep) c.name = "U_" + std::to_string(k) + ": " + c.name;
        append(out.checks, rep);
    }
    return out;
}

void write_to(const std::string& path, const Cx& x) {
    std::ofstream f(path);
    if (!f) throw InputError(path + ": cannot write");
    write_complex(f, x);
}

Outcome truncate(const Config& cfg, const PosetFile& pf) {
    const Compass c(pf.stratification());
    const Perversity p = parse_perversity(cfg.perversity, c.top() + 1);
    const auto tree = cfg.paren == "all" || cfg.paren == "combs" ? left_comb(c.top()) : parse_parenthesization(cfg.paren, c.top());
    const auto t = glued_perverted(c, p, tree);
    const Cx x = require_complex(cfg, pf.poset);
    const Cx sx = t->coreflect(x).source(), rx = t->reflect(x).target();
    Outcome out;
    std::ostringstream ss, rs;
    write_complex(ss, sx);
    write_complex(rs, rx);
    if (!cfg.out_s.empty()) write_to(cfg.out_s, sx);
    if (!cfg.out_r.empty()) write_to(cfg.out_r, rx);
    out.extra["provider"] = t->describe();
    out.extra["S"] = ss.str();
    out.extra["R"] = rs.str();
    if (cfg.out_s.empty()) out.lines.push_back("# S X\n" + ss.str());
    if (cfg.out_r.empty()) out.lines.push_back("# R X\n" + rs.str());
    out.checks.push_back(run_check("S X in left class", 1, cfg.seed, [&](std::uint64_t) { return t->is_ge0(sx); }));
    out.checks.push_back(run_check("R X in right class", 1, cfg.seed, [&](std::uint64_t) { return t->is_lt0(rx); }));
    return out;
}

Outcome classify(const Config& cfg, const PosetFile& pf) {
    const Compass c(pf.stratification());
    const Perversity p = parse_perversity(cfg.perversity, c.top() + 1);
    const auto t = glued_perverted(c, p);
    const Cx x = require_complex(cfg, pf.poset);
    Outcome out;
    const bool ge = t->is_ge0(x), lt = t->is_lt0(x), perverse = is_perverse(*t, x);
    out.extra["is_ge0"] = ge;
    out.extra["is_lt0"] = lt;
    out.extra["perverse"] = perverse;
    out.lines.push_back(std::string("is_ge0 ") + (ge ? "true" : "false"));
    out.lines.push_back(std::string("is_lt0 ") + (lt ? "true" : "false"));
    out.lines.push_back(std::string("perverse ") + (perverse ? "true" : "false"));
    out.checks.push_back(run_check("is_ge0 iff R X acyclic", 1, cfg.seed,
                                   [&](std::uint64_t) { return ge == is_acyclic(t->reflect(x).target()); }));
    out.checks.push_back(run_check("is_lt0 iff S X acyclic", 1, cfg.seed,
                                   [&](std::uint64_t) { return lt == is_acyclic(t->coreflect(x).source()); }));
    if (!cfg.map_path.empty()) {
        if (cfg.target_path.empty()) throw InputError("classify --map needs --target");
        const Cx y = load_complex(cfg.target_path, pf.poset);
        const ChainMap f = load_chain_map(cfg.map_path, x, y);
        const bool e = is_qiso(t->reflect_map(f)), m = is_qiso(t->coreflect_map(f));
        out.extra["arrow_in_E"] = e;
        out.extra["arrow_in_M"] = m;
        out.lines.push_back(std::string("arrow_in_E ") + (e ? "true" : "false"));
        out.lines.push_back(std::string("arrow_in_M ") + (m ? "true" : "false"));
        if (const auto* g = dynamic_cast<const GluedProvider*>(t.get())) {
            out.checks.push_back(run_check("arrow_in_E routes agree", 1, cfg.seed, [&](std::uint64_t) { return arrow_in_E(*g, f) == e; }));
            out.checks.push_back(run_check("arrow_in_M routes agree", 1, cfg.seed, [&](std::uint64_t) { return arrow_in_M(*g, f) == m; }));
        }
    }
    return out;
}

Outcome perverse(const Config& cfg, const PosetFile& pf) {
    const Compass c(pf.stratification());
    const Perversity p = parse_perversity(cfg.perversity, c.top() + 1);
    const Cx x = require_complex(cfg, pf.poset);
    Outcome out;
    const bool v = is_perverse(c, p, x);
    out.extra["perverse"] = v;
    out.lines.push_back(std::string("perverse ") + (v ? "true" : "false"));
    return out;
}

Outcome assoc(const Config& cfg, const PosetFile& pf) {
    const Compass c(pf.stratification());
    if (c.top() < 1) throw InputError("assoc needs at least two strata");
    const Perversity p = parse_perversity(cfg.perversity, c.top() + 1);
    Outcome out;
    auto trees = trees_for(cfg, c.top());
    if (trees.size() < 2) trees.push_back(left_comb(c.top()));
    for (const auto& t : trees) out.lines.push_back("bracketing " + t->describe());
    out.checks = assoc_check(c, p, cfg.samples, cfg.seed, {}, trees);
    return out;
}

Outcome bc(const Config& cfg, const PosetFile& pf) {
    const Compass c(pf.stratification());
    Outcome out;
    const auto squares = elementary_squares(c);
    if (squares.empty()) out.lines.push_back("no elementary squares: fewer than three strata");
    for (const auto& sq : squares) append(out.checks, bc_check(c, sq, cfg.samples, cfg.seed));
    return out;
}

Outcome equivariance(const Config& cfg, const PosetFile& pf) {
    Outcome out;
    out.checks = shift_equivariance_check(Compass(pf.stratification()), cfg.samples, cfg.seed);
    return out;
}

json config_json(const Config& cfg) {
    json j;
    j["poset"] = cfg.poset_path;
    if (!cfg.complex_path.empty()) j["complex"] = cfg.complex_path;
    if (!cfg.target_path.empty()) j["target"] = cfg.target_path;
    if (!cfg.map_path.empty()) j["map"] = cfg.map_path;
    j["char"] = cfg.p;
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples;
    j["perversity"] = cfg.perversity;
    j["paren"] = cfg.paren;
    return j;
}

int emit(const Config& cfg, const Outcome& out) {
    const bool ok = all_passed(out.checks);
    if (cfg.json) {
        json j;
        j["command"] = cfg.command;
        j["config"] = config_json(cfg);
        j["checks"] = json::array();
        for (const auto& c : out.checks) {
            json r;
            r["name"] = c.name;
            r["samples"] = c.samples;
            r["passed"] = c.passed;
            r["first_failing_seed"] = c.first_failing_seed ? json(*c.first_failing_seed) : json(nullptr);
            if (!c.ok()) r["detail"] = c.detail;
            j["checks"].push_back(r);
        }
        if (!out.extra.empty()) j["result"] = out.extra;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& l : out.lines) std::cout << l << "\n";
        for (const auto& c : out.checks) std::cout << c << "\n";
        if (!out.checks.empty()) std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pglue: recollements and glued t-structures over finite posets"};
    app.require_subcommand(1);
    Config cfg;
    if (const char* env = std::getenv("PGLUE_CHAR")) {
        try {
            cfg.p = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: PGLUE_CHAR is not a number\n";
            return 2;
        }
    }

    auto common = [&](CLI::App* sub, bool needs_samples) {
        sub->add_option("--poset", cfg.poset_path, "poset file")->required();
        sub->add_option("--char", cfg.p, "prime characteristic");
        sub->add_option("--seed", cfg.seed, "base seed");
        if (needs_samples) sub->add_option("--samples", cfg.samples, "samples per check")->check(CLI::PositiveNumber);
        sub->add_flag("--json", cfg.json, "JSON report");
    };
    auto with_perversity = [&](CLI::App* sub) {
        sub->add_option("--perversity", cfg.perversity, "comma-separated values k0,k1,... (default all zero)");
    };

    auto* s_axioms = app.add_subcommand("check-axioms", "recollement axioms for every cut of the stratification");
    common(s_axioms, true);
    auto* s_trunc = app.add_subcommand("truncate", "glued truncations S X and R X");
    common(s_trunc, false);
    with_perversity(s_trunc);
    s_trunc->add_option("--complex", cfg.complex_path, "complex file")->required();
    s_trunc->add_option("--out-s", cfg.out_s, "write S X here");
    s_trunc->add_option("--out-r", cfg.out_r, "write R X here");
    s_trunc->add_option("--paren", cfg.paren, "bracketing such as ((0 1) 2); default left comb");
    auto* s_class = app.add_subcommand("classify", "class membership of an object or an arrow");
    common(s_class, false);
    with_perversity(s_class);
    s_class->add_option("--complex", cfg.complex_path, "complex file (source of --map)")->required();
    s_class->add_option("--target", cfg.target_path, "target complex of --map");
    s_class->add_option("--map", cfg.map_path, "chain map file");
    auto* s_assoc = app.add_subcommand("assoc", "associativity across bracketings");
    common(s_assoc, true);
    with_perversity(s_assoc);
    s_assoc->add_option("--paren", cfg.paren, "all, combs, or one bracketing to compare with the left comb");
    auto* s_perv = app.add_subcommand("perverse", "heart membership");
    common(s_perv, false);
    with_perversity(s_perv);
    s_perv->add_option("--complex", cfg.complex_path, "complex file")->required();
    auto* s_bc = app.add_subcommand("bc", "Beck-Chevalley cells of every elementary square");
    common(s_bc, true);
    auto* s_eq = app.add_subcommand("equivariance", "shift equivariance and constant-perversity laws");
    common(s_eq, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        set_characteristic(cfg.p);
        cfg.command = app.get_subcommands().front()->get_name();
        const PosetFile pf = load_poset(cfg.poset_path);
        Outcome out;
        if (cfg.command == "check-axioms") out = check_axioms(cfg, pf);
        else if (cfg.command == "truncate") out = truncate(cfg, pf);
        else if (cfg.command == "classify") out = classify(cfg, pf);
        else if (cfg.command == "assoc") out = assoc(cfg, pf);
        else if (cfg.command == "perverse") out = perverse(cfg, pf);
        else if (cfg.command == "bc") out = bc(cfg, pf);
        else out = equivariance(cfg, pf);
        return emit(cfg, out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
