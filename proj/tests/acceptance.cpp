// Acceptance run: one line per criterion, exit status 0 only if every criterion holds.
// Pass --verbose to print every check record.

#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <pglue/pglue.hpp>

using namespace pglue;

namespace {

bool verbose = false;

std::string data(const std::string& f) { return std::string(PGLUE_DATA_DIR) + "/" + f; }

struct Tally {
    bool ok = true;
    std::string first_failure;

    void add(const Report& rep, const std::string& where) {
        for (const auto& c : rep) {
            if (verbose) std::cout << "    [" << where << "] " << c << "\n";
            if (!c.ok() && ok) {
                ok = false;
                std::ostringstream ss;
                ss << where << ": " << c;
                first_failure = ss.str();
            }
        }
    }
};

std::shared_ptr<const Recollement> sierpinski_rec(Faults f = {}) {
    const auto p = sierpinski();
    return std::make_shared<const Recollement>(Cut::from_closed(p, p->subset_of({"c"})), f);
}

std::shared_ptr<const Recollement> random6_rec(Faults f = {}) {
    const auto rs = random_stratified_poset(6, 2, 2024);
    return std::make_shared<const Recollement>(Cut::from_closed(rs.poset, rs.closed_chain[0]), f);
}

std::shared_ptr<const GluedProvider> glue_standard(const std::shared_ptr<const Recollement>& r, int p0, int p1,
                                                   bool wrong_way = false) {
    return glued_provider(r, standard_provider(r->closed_part(), p0), standard_provider(r->open_part(), p1), wrong_way);
}

Compass chain3() { return Compass(load_poset(data("chain3.poset")).stratification()); }
Compass hexagon() { return Compass(load_poset(data("hexagon.poset")).stratification()); }

int failures = 0;

void criterion(int k, const std::string& what, const std::function<Tally()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Tally t;
    try {
        t = body();
    } catch (const std::exception& e) {
        t.ok = false;
        t.first_failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << k << ": " << (t.ok ? "PASS" : "FAIL") << "  " << what;
    std::cout << "  (" << std::fixed << std::setprecision(1) << secs << " s)";
    if (!t.ok) std::cout << "\n    first failure: " << t.first_failure;
    std::cout << std::endl;
    if (!t.ok) ++failures;
}

/// A mutation counts as caught when some record fails with a reported seed.
std::string caught_by(const Report& rep) {
    for (const auto& c : rep)
        if (!c.ok() && c.first_failing_seed) return c.name + " at seed " + std::to_string(*c.first_failing_seed) + " (" + c.detail + ")";
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--verbose") == 0) verbose = true;
    set_characteristic(101);

    criterion(1, "recollement axioms on Sierpinski and a random 6-element poset, 100 samples each", [] {
        Tally t;
        t.add(check_recollement_axioms(*sierpinski_rec(), 100, 1), "sierpinski");
        t.add(check_recollement_axioms(*random6_rec(), 100, 1), "random6");
        return t;
    });

    criterion(2, "gluing theorem, 100 samples; derived Hom(S X, R Y) = 0 on 50 pairs", [] {
        Tally t;
        for (auto [p0, p1] : {std::pair{0, 0}, std::pair{0, 2}}) {
            const auto g = glue_standard(sierpinski_rec(), p0, p1);
            t.add(gluing_check(*g, 100, 1), "sierpinski " + g->describe());
            t.add(orthogonality_check(*g, 50, 1), "sierpinski " + g->describe());
        }
        const auto g = glue_standard(random6_rec(), 1, 0);
        t.add(gluing_check(*g, 100, 1), "random6 " + g->describe());
        t.add(orthogonality_check(*g, 50, 1), "random6 " + g->describe());
        return t;
    });

    criterion(3, "ladder symmetry S X ~ S'X and R X ~ R'X, 100 samples", [] {
        Tally t;
        t.add(ladder_symmetry_check(*glue_standard(sierpinski_rec(), 0, 2), 100, 1), "sierpinski (0,2)");
        t.add(ladder_symmetry_check(*glue_standard(random6_rec(), 1, 0), 100, 1), "random6 (1,0)");
        return t;
    });

    // ntt_check draws six arrows per sample, two of them initial or terminal.
    criterion(4, "arrow classes: both routes agree on 102 arrows, 34 of them initial or terminal", [] {
        Tally t;
        t.add(ntt_check(*glue_standard(sierpinski_rec(), 0, 1), 17, 1), "sierpinski (0,1)");
        t.add(ntt_check(*glue_standard(random6_rec(), 0, 0), 17, 1), "random6 (0,0)");
        return t;
    });

    criterion(5, "Beck-Chevalley cells on the 3-chain compass, 50 samples per square", [] {
        Tally t;
        const Compass c = chain3();
        const auto squares = elementary_squares(c);
        if (squares.empty()) {
            t.ok = false;
            t.first_failure = "no squares";
        }
        for (const auto& sq : squares) t.add(bc_check(c, sq, 50, 1), "chain3");
        return t;
    });

    criterion(6, "associativity on the 3-chain and a 6-element poset with 3 strata, 50 samples", [] {
        Tally t;
        t.add(assoc_check(chain3(), {0, 0, 0}, 50, 7), "chain3 (0,0,0)");
        t.add(assoc_check(chain3(), {1, -1, 2}, 50, 7), "chain3 (1,-1,2)");
        t.add(assoc_check(hexagon(), {0, 1, -1}, 50, 7), "hexagon (0,1,-1)");
        return t;
    });

    criterion(7, "constant perversity is a shift; p+1 on X[1] matches p on X, 50 samples, p in -2..2", [] {
        Tally t;
        const auto s = load_poset(data("sierpinski.poset"));
        t.add(shift_equivariance_check(Compass(s.stratification()), 50, 1), "sierpinski");
        t.add(shift_equivariance_check(chain3(), 50, 1), "chain3");
        return t;
    });

    criterion(8, "each of three corruptions is caught by some suite with a reported seed", [] {
        Tally t;
        auto require = [&](const std::string& mutation, const Report& rep) {
            const std::string by = caught_by(rep);
            if (verbose || by.empty()) std::cout << "    " << mutation << ": " << (by.empty() ? "NOT caught" : "caught by " + by) << "\n";
            if (by.empty() && t.ok) {
                t.ok = false;
                t.first_failure = mutation + " passed every suite";
            }
        };
        {
            Faults f;
            f.unsigned_fiber = true;
            Report rep = check_recollement_axioms(*sierpinski_rec(f), 20, 1);
            const auto g = glue_standard(sierpinski_rec(f), 0, 0);
            for (const auto& r : {gluing_check(*g, 20, 1), ladder_symmetry_check(*g, 20, 1)}) rep.insert(rep.end(), r.begin(), r.end());
            require("sign drop in the i_R fiber", rep);
        }
        {
            const auto g = glue_standard(sierpinski_rec(), 0, 2, true);
            Report rep = gluing_check(*g, 20, 1);
            const auto o = orthogonality_check(*g, 20, 1);
            rep.insert(rep.end(), o.begin(), o.end());
            require("i_L in place of i_R in the right-class predicate", rep);
        }
        {
            Faults f;
            f.omit_cech_face = true;
            const auto p = load_poset(data("chain3.poset"));
            const Recollement r(Cut::from_closed(p.poset, p.strata[0]), f);
            require("omitted Cech face in q_R", check_recollement_axioms(r, 20, 1));
        }
        return t;
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
