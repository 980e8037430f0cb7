#pragma once

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "complex.hpp"
#include "poset.hpp"

namespace pglue {

namespace detail {

struct LineReader {
    std::istream& in;
    std::string file;
    int line_no = 0;

    /// Next non-blank line with comments stripped, split into tokens; false at end of input.
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            tokens.clear();
            for (std::string t; ss >> t;) tokens.push_back(t);
            if (!tokens.empty()) return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError(file + ":" + std::to_string(line_no) + ": " + what);
    }
};

inline int parse_int(const LineReader& r, const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        r.fail("expected an integer for " + what + ", got '" + s + "'");
    }
    if (used != s.size() || v < INT32_MIN || v > INT32_MAX) r.fail("expected an integer for " + what + ", got '" + s + "'");
    return static_cast<int>(v);
}

/// Tokens after '=' form a matrix: rows separated by ';', '~' for an empty shape.
inline Mat parse_matrix(const LineReader& r, const std::vector<std::string>& tokens, std::size_t from, int rows, int cols) {
    std::string text;
    for (std::size_t i = from; i < tokens.size(); ++i) text += tokens[i] + " ";
    Mat m(rows, cols);
    if (text.find('~') != std::string::npos) {
        if (rows != 0 && cols != 0) r.fail("'~' given for a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
        return m;
    }
    std::vector<std::vector<std::int64_t>> vals(1);
    std::string tok;
    auto flush = [&] {
        if (!tok.empty()) vals.back().push_back(parse_int(r, tok, "a matrix entry"));
        tok.clear();
    };
    for (char ch : text) {
        if (ch == ';') {
            flush();
            vals.emplace_back();
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            flush();
        } else {
            tok += ch;
        }
    }
    flush();
    if (static_cast<int>(vals.size()) != rows) r.fail("matrix has " + std::to_string(vals.size()) + " rows, expected " + std::to_string(rows));
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(vals[i].size()) != cols)
            r.fail("matrix row " + std::to_string(i + 1) + " has " + std::to_string(vals[i].size()) + " entries, expected " +
                   std::to_string(cols));
        for (int j = 0; j < cols; ++j) m(i, j) = gf::reduce(vals[i][j]);
    }
    return m;
}

inline std::string matrix_text(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) return "~";
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + std::to_string(m(i, j));
    }
    return s;
}

inline std::size_t expect_equals(const LineReader& r, const std::vector<std::string>& t, std::size_t at) {
    if (t.size() <= at || t[at] != "=") r.fail("expected '=' after the coordinates");
    return at + 1;
}

inline int element(const LineReader& r, const Poset& p, const std::string& id) {
    try {
        return p.index_of(id);
    } catch (const InputError&) {
        r.fail("unknown element '" + id + "'");
    }
}

}  // namespace detail

struct PosetFile {
    PosetPtr poset;
    std::vector<Subset> strata;  ///< cumulative down-closed sets, possibly empty

    /// The stratification given in the file, or one stratum when none is given.
    [[nodiscard]] Stratification stratification() const {
        return strata.empty() ? Stratification(poset, {poset->all()}) : Stratification(poset, strata);
    }
};

inline PosetFile parse_poset(std::istream& in, const std::string& file = "<poset>") {
    detail::LineReader r{in, file};
    std::string name = "poset";
    std::vector<std::string> elems;
    std::vector<std::pair<std::string, std::string>> rels;
    std::vector<std::vector<std::string>> strata;
    std::vector<int> strat_lines, rel_lines;
    std::vector<std::string> t;
    bool ended = false;
    while (r.next(t)) {
        if (ended) r.fail("text after 'end'");
        const std::string& kw = t[0];
        if (kw == "name") {
            if (t.size() != 2) r.fail("'name' takes one identifier");
            name = t[1];
        } else if (kw == "elem") {
            if (t.size() < 2) r.fail("'elem' needs at least one identifier");
            elems.insert(elems.end(), t.begin() + 1, t.end());
        } else if (kw == "rel") {
            if (t.size() != 3) r.fail("'rel' takes two identifiers");
            rels.emplace_back(t[1], t[2]);
            rel_lines.push_back(r.line_no);
        } else if (kw == "strat") {
            if (t.size() < 2) r.fail("'strat' needs at least one identifier");
            strata.emplace_back(t.begin() + 1, t.end());
            strat_lines.push_back(r.line_no);
        } else if (kw == "end") {
            ended = true;
        } else {
            r.fail("unknown keyword '" + kw + "'");
        }
    }
    if (!ended) r.fail("missing 'end'");
    for (std::size_t k = 0; k < rels.size(); ++k)
        for (const auto& id : {rels[k].first, rels[k].second})
            if (std::find(elems.begin(), elems.end(), id) == elems.end()) {
                r.line_no = rel_lines[k];
                r.fail("unknown element '" + id + "'");
            }
    PosetFile out;
    try {
        out.poset = Poset::build(elems, rels, name);
    } catch (const InputError& e) {
        throw InputError(file + ": " + e.what());
    }
    for (std::size_t k = 0; k < strata.size(); ++k) {
        r.line_no = strat_lines[k];
        Subset s;
        for (const auto& id : strata[k]) s.push_back(detail::element(r, *out.poset, id));
        out.strata.push_back(sorted(s));
    }
    if (!out.strata.empty()) {
        try {
            (void)Stratification(out.poset, out.strata);
        } catch (const InputError& e) {
            throw InputError(file + ": " + e.what());
        }
    }
    return out;
}

inline PosetFile load_poset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    return parse_poset(in, path);
}

inline void write_poset(std::ostream& out, const Poset& p, const std::vector<Subset>& strata = {}) {
    out << "name " << p.name() << "\n";
    for (int i = 0; i < p.size(); ++i) out << "elem " << p.name_of(i) << "\n";
    for (const auto& [a, b] : p.covers()) out << "rel " << p.name_of(a) << " " << p.name_of(b) << "\n";
    for (const auto& s : strata) {
        out << "strat";
        for (int x : s) out << " " << p.name_of(x);
        out << "\n";
    }
    out << "end\n";
}

/// Reads a complex over `p`. Shapes come from the `dims` lines; omitted maps and
/// differentials are zero. Invariant violations are reported with their coordinates.
inline Cx parse_complex(std::istream& in, const PosetPtr& p, const std::string& file = "<complex>") {
    detail::LineReader r{in, file};
    std::vector<std::string> t;
    if (!r.next(t)) r.fail("empty complex file");
    if (t.size() != 6 || t[0] != "complex" || t[1] != "over" || t[3].rfind("char=", 0) != 0 || t[4] != "degrees")
        r.fail("expected header 'complex over <poset> char=<p> degrees <lo>..<hi>'");
    if (t[2] != p->name()) r.fail("complex is over '" + t[2] + "' but the poset is '" + p->name() + "'");
    const int ch = detail::parse_int(r, t[3].substr(5), "char");
    if (ch != static_cast<int>(characteristic()))
        r.fail("file characteristic " + std::to_string(ch) + " differs from session characteristic " +
               std::to_string(characteristic()));
    const auto dots = t[5].find("..");
    if (dots == std::string::npos) r.fail("degree range must look like <lo>..<hi>");
    const int lo = detail::parse_int(r, t[5].substr(0, dots), "lo");
    const int hi = detail::parse_int(r, t[5].substr(dots + 2), "hi");
    if (hi < lo - 1) r.fail("degree range is reversed");
    const int span = hi - lo + 1;
    std::vector<std::vector<int>> dims(span, std::vector<int>(p->size(), 0));
    std::map<std::pair<int, int>, Mat> covers, diffs;
    auto in_range = [&](int n) {
        if (n < lo || n > hi) r.fail("degree " + std::to_string(n) + " outside " + std::to_string(lo) + ".." + std::to_string(hi));
        return n - lo;
    };
    auto dim = [&](int n, int e) { return n < lo || n > hi ? 0 : dims[n - lo][e]; };
    bool ended = false;
    while (r.next(t)) {
        if (ended) r.fail("text after 'end'");
        if (t[0] == "dims") {
            if (t.size() < 2) r.fail("'dims' needs a degree");
            const int n = detail::parse_int(r, t[1], "degree");
            const int row = in_range(n);
            for (std::size_t k = 2; k < t.size(); ++k) {
                const auto eq = t[k].find('=');
                if (eq == std::string::npos) r.fail("expected <element>=<dimension>, got '" + t[k] + "'");
                const int e = detail::element(r, *p, t[k].substr(0, eq));
                const int d = detail::parse_int(r, t[k].substr(eq + 1), "dimension");
                if (d < 0) r.fail("negative dimension");
                dims[row][e] = d;
            }
        } else if (t[0] == "map") {
            if (t.size() < 5) r.fail("expected 'map <deg> <a> <b> = <matrix>'");
            const int n = detail::parse_int(r, t[1], "degree");
            in_range(n);
            const int a = detail::element(r, *p, t[2]), b = detail::element(r, *p, t[3]);
            const int k = p->cover_index(a, b);
            if (k < 0) r.fail(t[2] + " < " + t[3] + " is not a cover relation");
            covers[{n, k}] = detail::parse_matrix(r, t, detail::expect_equals(r, t, 4), dim(n, b), dim(n, a));
        } else if (t[0] == "diff") {
            if (t.size() < 4) r.fail("expected 'diff <deg> <elem> = <matrix>'");
            const int n = detail::parse_int(r, t[1], "degree");
            in_range(n);
            const int e = detail::element(r, *p, t[2]);
            diffs[{n, e}] = detail::parse_matrix(r, t, detail::expect_equals(r, t, 3), dim(n - 1, e), dim(n, e));
        } else if (t[0] == "end") {
            ended = true;
        } else {
            r.fail("unknown keyword '" + t[0] + "'");
        }
    }
    if (!ended) r.fail("missing 'end'");
    auto pick = [](const std::map<std::pair<int, int>, Mat>& m, int n, int k, int rows, int cols) {
        const auto it = m.find({n, k});
        return it == m.end() ? Mat::zero(rows, cols) : it->second;
    };
    try {
        return assemble(
            p, lo, hi, dim,
            [&](int n, int k) {
                const auto [a, b] = p->covers()[k];
                return pick(covers, n, k, dim(n, b), dim(n, a));
            },
            [&](int n, int e) { return pick(diffs, n, e, dim(n - 1, e), dim(n, e)); });
    } catch (const InputError& e) {
        throw InputError(file + ": " + e.what());
    }
}

inline Cx load_complex(const std::string& path, const PosetPtr& p) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    return parse_complex(in, p, path);
}

inline void write_complex(std::ostream& out, const Cx& x0) {
    const Cx x = x0.trimmed();
    const Poset& p = *x.poset();
    const int lo = x.is_zero() ? 0 : x.lo(), hi = x.is_zero() ? -1 : x.hi();
    out << "complex over " << p.name() << " char=" << characteristic() << " degrees " << lo << ".." << hi << "\n";
    for (int n = lo; n <= hi; ++n) {
        out << "dims " << n;
        for (int e = 0; e < p.size(); ++e) out << " " << p.name_of(e) << "=" << x.dim(n, e);
        out << "\n";
    }
    for (int n = lo; n <= hi; ++n)
        for (const auto& [a, b] : p.covers()) {
            const Mat m = x.structure(n, a, b);
            if (m.rows() && m.cols()) out << "map " << n << " " << p.name_of(a) << " " << p.name_of(b) << " = " << detail::matrix_text(m) << "\n";
        }
    for (int n = lo; n <= hi; ++n)
        for (int e = 0; e < p.size(); ++e) {
            const Mat m = x.d(n, e);
            if (m.rows() && m.cols()) out << "diff " << n << " " << p.name_of(e) << " = " << detail::matrix_text(m) << "\n";
        }
    out << "end\n";
}

/// Reads `comp <deg> <elem> = <matrix>` lines between `chainmap` and `end`; omitted components are zero.
inline ChainMap parse_chain_map(std::istream& in, const Cx& source, const Cx& target, const std::string& file = "<chainmap>") {
    detail::LineReader r{in, file};
    const PosetPtr& p = source.poset();
    std::vector<std::string> t;
    if (!r.next(t) || t.size() != 1 || t[0] != "chainmap") r.fail("expected header 'chainmap'");
    std::map<std::pair<int, int>, Mat> comps;
    bool ended = false;
    while (r.next(t)) {
        if (ended) r.fail("text after 'end'");
        if (t[0] == "comp") {
            if (t.size() < 4) r.fail("expected 'comp <deg> <elem> = <matrix>'");
            const int n = detail::parse_int(r, t[1], "degree");
            const int e = detail::element(r, *p, t[2]);
            comps[{n, e}] = detail::parse_matrix(r, t, detail::expect_equals(r, t, 3), target.dim(n, e), source.dim(n, e));
        } else if (t[0] == "end") {
            ended = true;
        } else {
            r.fail("unknown keyword '" + t[0] + "'");
        }
    }
    if (!ended) r.fail("missing 'end'");
    try {
        return ChainMap(source, target, [&](int n, int e) {
            const auto it = comps.find({n, e});
            return it == comps.end() ? Mat::zero(target.dim(n, e), source.dim(n, e)) : it->second;
        });
    } catch (const InputError& e) {
        throw InputError(file + ": " + e.what());
    }
}

inline ChainMap load_chain_map(const std::string& path, const Cx& source, const Cx& target) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    return parse_chain_map(in, source, target, path);
}

inline void write_chain_map(std::ostream& out, const ChainMap& f) {
    const Poset& p = *f.poset();
    out << "chainmap\n";
    const int lo = std::min(f.source().lo(), f.target().lo()), hi = std::max(f.source().hi(), f.target().hi());
    for (int n = lo; n <= hi; ++n)
        for (int e = 0; e < p.size(); ++e) {
            const Mat m = f.at(n, e);
            if (m.rows() && m.cols()) out << "comp " << n << " " << p.name_of(e) << " = " << detail::matrix_text(m) << "\n";
        }
    out << "end\n";
}

}  // namespace pglue
