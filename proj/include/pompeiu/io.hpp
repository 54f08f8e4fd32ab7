#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pompeiu/constructors.hpp"
#include "pompeiu/engine.hpp"
#include "pompeiu/errors.hpp"
#include "pompeiu/finite_group.hpp"
#include "pompeiu/structure.hpp"

namespace pompeiu {

using json = nlohmann::ordered_json;

namespace io_detail {

struct Line {
    std::string text;
    int number;  // 1-based position in the original text
};

// Comment ('#') and blank lines vanish here; numbering survives for errors.
inline std::vector<Line> content_lines(const std::string& text) {
    std::vector<Line> out;
    std::string cur;
    int number = 1;
    auto flush = [&] {
        if (!cur.empty() && cur.back() == '\r') cur.pop_back();
        std::size_t i = cur.find_first_not_of(" \t");
        if (i != std::string::npos && cur[i] != '#') out.push_back({cur, number});
        cur.clear();
        ++number;
    };
    for (char c : text) {
        if (c == '\n')
            flush();
        else
            cur += c;
    }
    flush();
    return out;
}

inline std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// "name: value" with a fixed field name; returns the value, or nothing when
// the line does not start that field.
inline std::optional<std::string> field_value(const Line& ln, const std::string& name) {
    std::string t = trimmed(ln.text);
    if (t.rfind(name + ":", 0) != 0) return std::nullopt;
    return trimmed(t.substr(name.size() + 1));
}

struct Token {
    long long value;
    int col;  // 1-based
};

inline std::vector<Token> number_tokens(const Line& ln, const char* what) {
    std::vector<Token> out;
    const std::string& s = ln.text;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ' ' || s[i] == '\t') {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (s[i] == '-') ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError(std::string("expected a number in ") + what, ln.number,
                             static_cast<int>(start) + 1);
        long long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > 1'000'000'000)
                throw ParseError(std::string("number too large in ") + what, ln.number,
                                 static_cast<int>(start) + 1);
            ++i;
        }
        if (s[start] == '-') v = -v;
        out.push_back({v, static_cast<int>(start) + 1});
    }
    return out;
}

inline int element_order(const FiniteGroup& G, int x) {
    int acc = x, n = 1;
    while (acc != FiniteGroup::identity) {
        acc = G.op(acc, x);
        ++n;
    }
    return n;
}

// A finite abelian group is pinned up to isomorphism by its multiset of
// element orders, so a claimed cyclic-factor list can be checked exactly.
inline void check_abelian_factors(const FiniteGroup& G, const std::vector<int>& factors,
                                  int line) {
    long long prod = 1;
    for (int f : factors) {
        if (f < 1) throw ParseError("factors must be positive", line, 1);
        prod *= f;
        if (prod > G.order) break;
    }
    if (prod != G.order)
        throw ParseError("factors do not multiply to the group order", line, 1);
    if (!G.is_abelian()) throw ParseError("factors given for a nonabelian group", line, 1);

    std::vector<int> claimed, actual;
    std::vector<int> digits(factors.size(), 0);
    for (int i = 0; i < G.order; ++i) {
        int rem = i;
        for (std::size_t t = factors.size(); t-- > 0;) {
            digits[t] = rem % factors[t];
            rem /= factors[t];
        }
        int ord = 1;
        for (std::size_t t = 0; t < factors.size(); ++t) {
            int comp = factors[t] / std::gcd(factors[t], digits[t]);
            ord = ord / std::gcd(ord, comp) * comp;
        }
        claimed.push_back(ord);
    }
    for (int i = 0; i < G.order; ++i) actual.push_back(element_order(G, i));
    std::sort(claimed.begin(), claimed.end());
    std::sort(actual.begin(), actual.end());
    if (claimed != actual)
        throw ParseError("factors do not describe this group", line, 1);
}

} // namespace io_detail

// Parses the textual group format:
//
//   pompeiu-group/1
//   label: z2
//   order: 2
//   factors: 2            (optional, abelian cyclic factors)
//   table:                (or "generators:")
//   0 1
//   1 0
//
// Table bodies are n rows of n 0-based indices with element 0 the identity.
// Generator bodies are one permutation per line in cycle notation, e.g.
// "(0 1)(2 3)"; the group is their closure. '#' starts a comment line.
inline FiniteGroup parse_group_file(const std::string& text) {
    using namespace io_detail;
    auto lines = content_lines(text);
    std::size_t at = 0;
    auto need = [&](const char* what) -> const Line& {
        if (at >= lines.size())
            throw ParseError(std::string("unexpected end of file, expected ") + what,
                             lines.empty() ? 1 : lines.back().number + 1, 1);
        return lines[at];
    };

    if (trimmed(need("format version").text) != "pompeiu-group/1")
        throw ParseError("first line must be \"pompeiu-group/1\"", lines[at].number, 1);
    ++at;

    auto label = field_value(need("\"label:\""), "label");
    if (!label) throw ParseError("expected \"label:\"", lines[at].number, 1);
    ++at;

    auto order_text = field_value(need("\"order:\""), "order");
    if (!order_text) throw ParseError("expected \"order:\"", lines[at].number, 1);
    const int order_line = lines[at].number;
    Line order_ln{*order_text, order_line};
    auto order_tokens = number_tokens(order_ln, "\"order:\"");
    if (order_tokens.size() != 1 || order_tokens[0].value < 1)
        throw ParseError("order must be a single positive number", order_line, 1);
    if (order_tokens[0].value > max_group_order())
        throw ParseError("order exceeds the configured bound", order_line, 1);
    const int order = static_cast<int>(order_tokens[0].value);
    ++at;

    std::vector<int> factors;
    int factors_line = 0;
    if (at < lines.size())
        if (auto ftext = field_value(lines[at], "factors")) {
            factors_line = lines[at].number;
            for (auto& tok : number_tokens(Line{*ftext, factors_line}, "\"factors:\""))
                factors.push_back(static_cast<int>(tok.value));
            if (factors.empty())
                throw ParseError("\"factors:\" needs at least one number", factors_line, 1);
            ++at;
        }

    const Line& body = need("\"table:\" or \"generators:\"");
    FiniteGroup G;

    if (trimmed(body.text) == "table:") {
        ++at;
        std::vector<std::vector<Token>> rows;
        for (int r = 0; r < order; ++r) {
            const Line& ln = need("a table row");
            auto toks = number_tokens(ln, "the table");
            if (static_cast<int>(toks.size()) != order)
                throw ParseError("table row has " + std::to_string(toks.size()) +
                                     " entries, expected " + std::to_string(order),
                                 ln.number, 1);
            for (auto& t : toks)
                if (t.value < 0 || t.value >= order)
                    throw ParseError("table entry out of range", ln.number, t.col);
            rows.push_back(std::move(toks));
            ++at;
        }
        auto row_line = [&](int r) { return lines[at - order + r].number; };

        for (int r = 0; r < order; ++r) {
            std::vector<char> seen(order, 0);
            for (auto& t : rows[r]) {
                if (seen[t.value])
                    throw ParseError("row " + std::to_string(r) + " not a permutation",
                                     row_line(r), t.col);
                seen[t.value] = 1;
            }
        }
        for (int c = 0; c < order; ++c) {
            std::vector<char> seen(order, 0);
            for (int r = 0; r < order; ++r) {
                auto& t = rows[r][c];
                if (seen[t.value])
                    throw ParseError("column " + std::to_string(c) + " not a permutation",
                                     row_line(r), t.col);
                seen[t.value] = 1;
            }
        }
        for (int x = 0; x < order; ++x) {
            if (rows[0][x].value != x)
                throw ParseError("element 0 must be the identity", row_line(0),
                                 rows[0][x].col);
            if (rows[x][0].value != x)
                throw ParseError("element 0 must be the identity", row_line(x),
                                 rows[x][0].col);
        }
        auto mul = [&](int a, int b) { return static_cast<int>(rows[a][b].value); };
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                for (int c = 0; c < order; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw ParseError("associativity failure at (" + std::to_string(a) +
                                             "," + std::to_string(b) + "," +
                                             std::to_string(c) + ")",
                                         row_line(a), 1);

        std::vector<std::uint16_t> flat;
        flat.reserve(static_cast<std::size_t>(order) * order);
        for (auto& row : rows)
            for (auto& t : row) flat.push_back(static_cast<std::uint16_t>(t.value));
        G = from_cayley_table(order, flat, *label);
    } else if (trimmed(body.text) == "generators:") {
        ++at;
        std::vector<std::vector<std::pair<int, int>>> cycle_maps;  // (from, to) per line
        std::vector<int> gen_lines;
        int degree = 0;
        while (at < lines.size()) {
            const Line& ln = lines[at];
            std::vector<std::pair<int, int>> mapping;
            std::vector<long long> cycle;
            bool open = false;
            const std::string& s = ln.text;
            std::size_t i = 0;
            auto close_cycle = [&](int col) {
                for (std::size_t k = 0; k < cycle.size(); ++k) {
                    int from = static_cast<int>(cycle[k]);
                    int to = static_cast<int>(cycle[(k + 1) % cycle.size()]);
                    for (auto& [f, t] : mapping)
                        if (f == from)
                            throw ParseError("generator repeats point " +
                                                 std::to_string(from),
                                             ln.number, col);
                    mapping.emplace_back(from, to);
                    degree = std::max(degree, from + 1);
                }
                cycle.clear();
            };
            while (i < s.size()) {
                char c = s[i];
                if (c == ' ' || c == '\t') {
                    ++i;
                } else if (c == '(') {
                    if (open)
                        throw ParseError("nested '(' in cycle notation", ln.number,
                                         static_cast<int>(i) + 1);
                    open = true;
                    ++i;
                } else if (c == ')') {
                    if (!open)
                        throw ParseError("')' without '(' in cycle notation", ln.number,
                                         static_cast<int>(i) + 1);
                    close_cycle(static_cast<int>(i) + 1);
                    open = false;
                    ++i;
                } else if (std::isdigit(static_cast<unsigned char>(c))) {
                    if (!open)
                        throw ParseError("number outside a cycle", ln.number,
                                         static_cast<int>(i) + 1);
                    long long v = 0;
                    std::size_t start = i;
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                        v = v * 10 + (s[i] - '0');
                        if (v > 100000)
                            throw ParseError("point index too large", ln.number,
                                             static_cast<int>(start) + 1);
                        ++i;
                    }
                    for (auto u : cycle)
                        if (u == v)
                            throw ParseError("cycle repeats point " + std::to_string(v),
                                             ln.number, static_cast<int>(start) + 1);
                    cycle.push_back(v);
                } else {
                    throw ParseError("unexpected character in cycle notation", ln.number,
                                     static_cast<int>(i) + 1);
                }
            }
            if (open)
                throw ParseError("unclosed '(' in cycle notation", ln.number,
                                 static_cast<int>(s.size()) + 1);
            cycle_maps.push_back(std::move(mapping));
            gen_lines.push_back(ln.number);
            ++at;
        }
        if (cycle_maps.empty())
            throw ParseError("\"generators:\" needs at least one permutation",
                             body.number, 1);
        if (degree == 0) degree = 1;

        std::vector<std::vector<int>> gens;
        for (auto& mapping : cycle_maps) {
            std::vector<int> perm(degree);
            for (int j = 0; j < degree; ++j) perm[j] = j;
            for (auto& [f, t] : mapping) perm[f] = t;
            gens.push_back(std::move(perm));
        }
        G = from_permutation_generators(gens, *label);
        if (G.order != order)
            throw ParseError("order mismatch: file says " + std::to_string(order) +
                                 ", generators close to " + std::to_string(G.order),
                             order_line, 1);
    } else {
        throw ParseError("expected \"table:\" or \"generators:\"", body.number, 1);
    }

    if (at < lines.size() && trimmed(body.text) == "table:")
        throw ParseError("unexpected content after the table", lines[at].number, 1);

    if (!factors.empty()) {
        io_detail::check_abelian_factors(G, factors, factors_line);
        G.abelian_factors = factors;
    }
    return G;
}

// Canonical text for a group: always the table body, one space between
// entries, trailing newline. parse(serialize(G)) reproduces G exactly.
inline std::string serialize_group(const FiniteGroup& G) {
    std::string s = "pompeiu-group/1\n";
    s += "label: " + G.label + "\n";
    s += "order: " + std::to_string(G.order) + "\n";
    if (!G.abelian_factors.empty()) {
        s += "factors:";
        for (int f : G.abelian_factors) s += " " + std::to_string(f);
        s += "\n";
    }
    s += "table:\n";
    for (int a = 0; a < G.order; ++a) {
        for (int b = 0; b < G.order; ++b) {
            if (b) s += " ";
            s += std::to_string(G.op(a, b));
        }
        s += "\n";
    }
    return s;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline FiniteGroup load_group_file(const std::string& path) {
    return parse_group_file(read_text_file(path));
}

// "a,b,c" with optional spaces; negatives allowed (the lattice side uses
// them, group subsets reject them later).
inline std::vector<long long> parse_integer_list(const std::string& text) {
    std::vector<long long> out;
    std::size_t i = 0;
    bool expect_number = true;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        if (c == ',') {
            if (expect_number)
                throw ParseError("expected a number before ','", 1, static_cast<int>(i) + 1);
            expect_number = true;
            ++i;
            continue;
        }
        if (!expect_number)
            throw ParseError("expected ','", 1, static_cast<int>(i) + 1);
        std::size_t start = i;
        if (c == '-') ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError("expected a number", 1, static_cast<int>(start) + 1);
        long long v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i] - '0');
            if (v > 1'000'000'000)
                throw ParseError("number too large", 1, static_cast<int>(start) + 1);
            ++i;
        }
        out.push_back(text[start] == '-' ? -v : v);
        expect_number = false;
    }
    if (expect_number)
        throw ParseError("empty list" + std::string(out.empty() ? "" : " item"), 1,
                         static_cast<int>(text.size()) + 1);
    return out;
}

inline std::vector<int> parse_subset_indices(const std::string& text) {
    std::vector<int> out;
    for (long long v : parse_integer_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

// Exact scalar text: "p/q" when real, "p/q+r/s·i" otherwise.
inline std::string serialize_scalar(const Scalar& s) {
    std::string re = s.real().get_str();
    if (s.is_real()) return re;
    Rational im = s.imag();
    std::string sign = sgn(im) < 0 ? "-" : "+";
    if (sgn(im) < 0) im = -im;
    return re + sign + im.get_str() + "·i";
}

// "-1·e0 + 1·e1": exact coefficients against basis functions e<index>.
inline std::string render_function(const GroupRingElement& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (const auto& [x, c] : f.terms()) {
        if (!s.empty()) s += " + ";
        s += serialize_scalar(c) + "·e" + std::to_string(x);
    }
    return s;
}

// 12 significant digits, the only place floating values are printed.
inline std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Everything `classify` reports about one group: the per-subset rows plus
// the group-level summary.
struct Report {
    FiniteGroup group;
    ClassifyReport classification;
    L2Verdict l2;
    std::vector<Subset> normal_subgroup_list;
    std::string normal_subgroups_note;  // nonempty when enumeration was refused
};

inline Report build_report(const FiniteGroup& G, const ClassifyOptions& opt = {}) {
    Report r{G, classify_subsets(G, opt), is_l2_pompeiu_group(G), {}, {}};
    try {
        r.normal_subgroup_list = normal_subgroups(G).subgroups;
    } catch (const PreconditionError& e) {
        r.normal_subgroups_note = e.what();
    }
    return r;
}

namespace io_detail {

inline std::string oracle_cell(const FiniteGroup& G) {
    return G.abelian_factors.empty() ? "n/a" : "agrees";
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

} // namespace io_detail

// CSV rows under the fixed header; subsets are quoted since they contain
// commas.
inline std::string render_csv(const Report& r) {
    std::string s = "subset,size,is_pompeiu,ideal_rank,witness_dim\n";
    for (const auto& e : r.classification.entries) {
        s += "\"" + e.subset.to_string() + "\",";
        s += std::to_string(e.subset.size()) + ",";
        s += (e.is_pompeiu ? "true" : "false");
        s += "," + std::to_string(e.ideal_rank) + "," + std::to_string(e.witness_dim) +
             "\n";
    }
    return s;
}

inline std::string render_markdown(const Report& r) {
    using io_detail::yes_no;
    const auto& c = r.classification;
    std::string s = "# Pompeiu classification: " + c.group_label + " (order " +
                    std::to_string(c.group_order) + ")\n\n";
    s += "- subsets covered: " + std::to_string(c.subsets_covered) +
         (c.complete ? " (complete)" : (c.orbits_only ? " (orbit representatives)"
                                                      : " (size-capped)")) +
         "\n";
    s += "- pompeiu: " + std::to_string(c.pompeiu_count) +
         ", not pompeiu: " + std::to_string(c.non_pompeiu_count) + "\n";
    s += "- Pompeiu group: " +
         (c.complete ? yes_no(c.group_is_pompeiu) : std::string("unknown (partial run)")) +
         "\n";
    s += "- square-summable-class Pompeiu group: " + yes_no(r.l2.is_pompeiu_group) + "\n";
    s += "  - " + r.l2.explanation + "\n";
    if (r.normal_subgroups_note.empty()) {
        s += "- normal subgroups:";
        for (const auto& n : r.normal_subgroup_list) s += " {" + n.to_string() + "}";
        s += "\n";
    } else {
        s += "- normal subgroups: not enumerated (" + r.normal_subgroups_note + ")\n";
    }
    s += "\n| subset | size | is_pompeiu | ideal_rank | witness_dim | orbit_size | oracle |\n";
    s += "|---|---|---|---|---|---|---|\n";
    for (const auto& e : c.entries) {
        s += "| {" + e.subset.to_string() + "} | " + std::to_string(e.subset.size()) +
             " | " + yes_no(e.is_pompeiu) + " | " + std::to_string(e.ideal_rank) + " | " +
             std::to_string(e.witness_dim) + " | " + std::to_string(e.orbit_size) + " | " +
             io_detail::oracle_cell(r.group) + " |\n";
    }
    return s;
}

inline json subset_json(const Subset& k) {
    json a = json::array();
    for (auto x : k.elements) a.push_back(static_cast<int>(x));
    return a;
}

inline json function_json(const GroupRingElement& f, int order) {
    json a = json::array();
    for (int x = 0; x < order; ++x) a.push_back(serialize_scalar(f.coeff(x)));
    return a;
}

inline json render_report_json(const Report& r) {
    const auto& c = r.classification;
    json j;
    j["format"] = "pompeiu-report/1";
    j["group"] = {{"label", c.group_label},
                  {"order", c.group_order},
                  {"abelian_factors", r.group.abelian_factors}};
    j["orbits_only"] = c.orbits_only;
    j["complete"] = c.complete;
    j["subsets_covered"] = c.subsets_covered;
    j["pompeiu_count"] = c.pompeiu_count;
    j["non_pompeiu_count"] = c.non_pompeiu_count;
    j["rows"] = json::array();
    for (const auto& e : c.entries)
        j["rows"].push_back({{"subset", subset_json(e.subset)},
                             {"size", e.subset.size()},
                             {"is_pompeiu", e.is_pompeiu},
                             {"ideal_rank", e.ideal_rank},
                             {"witness_dim", e.witness_dim},
                             {"orbit_size", e.orbit_size},
                             {"oracle", io_detail::oracle_cell(r.group)}});
    json summary;
    if (c.complete)
        summary["is_pompeiu_group"] = c.group_is_pompeiu;
    else
        summary["is_pompeiu_group"] = nullptr;
    json l2 = {{"is_pompeiu_group", r.l2.is_pompeiu_group},
               {"explanation", r.l2.explanation}};
    if (r.l2.violating_subgroup)
        l2["violating_subgroup"] = subset_json(*r.l2.violating_subgroup);
    else
        l2["violating_subgroup"] = nullptr;
    if (r.l2.witness)
        l2["witness"] = function_json(*r.l2.witness, r.group.order);
    else
        l2["witness"] = nullptr;
    summary["l2"] = l2;
    if (r.normal_subgroups_note.empty()) {
        summary["normal_subgroups"] = json::array();
        for (const auto& n : r.normal_subgroup_list)
            summary["normal_subgroups"].push_back(subset_json(n));
        summary["normal_subgroups_note"] = nullptr;
    } else {
        summary["normal_subgroups"] = nullptr;
        summary["normal_subgroups_note"] = r.normal_subgroups_note;
    }
    j["summary"] = summary;
    return j;
}

inline std::string render_report(const Report& r, const std::string& format) {
    if (format == "csv") return render_csv(r);
    if (format == "md") return render_markdown(r);
    if (format == "json") return render_report_json(r).dump(2) + "\n";
    throw PreconditionError("unknown report format: " + format);
}

inline json render_verdict_json(const PompeiuVerdict& v) {
    const FiniteGroup& G = *v.subset.group;
    json j;
    j["format"] = "pompeiu-verdict/1";
    j["group"] = {{"label", G.label}, {"order", G.order}};
    j["subset"] = subset_json(v.subset);
    j["is_pompeiu"] = v.is_pompeiu;
    j["ideal_rank"] = v.ideal_rank;
    j["witness_dim"] = static_cast<int>(v.witness_basis.size());
    j["witness_basis"] = json::array();
    for (const auto& w : v.witness_basis)
        j["witness_basis"].push_back(function_json(w, G.order));
    if (v.oracle_agreement) {
        j["oracle"] = {{"modulus", v.oracle_agreement->modulus},
                       {"values", v.oracle_agreement->values},
                       {"zero_count", v.oracle_agreement->zero_count}};
    } else {
        j["oracle"] = nullptr;
    }
    return j;
}

} // namespace pompeiu
