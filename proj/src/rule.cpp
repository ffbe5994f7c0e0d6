#include "rulemine/rule.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace rulemine {

namespace {

// Variable name for chain position i in a body of length n: x, z1.., y.
std::string var_name(std::size_t i, std::size_t n) {
    if (i == 0) return "x";
    if (i == n) return "y";
    return "z" + std::to_string(i);
}

std::string format_fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string rule_body_text(const KnowledgeGraph& kg, const Rule& r) {
    std::ostringstream out;
    const std::size_t n = r.body.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out << " & ";
        out << kg.predicate_name(r.body[i]) << '(' << var_name(i, n) << ',' << var_name(i + 1, n)
            << ')';
    }
    return out.str();
}

std::string rule_text(const KnowledgeGraph& kg, const Rule& r) {
    return rule_body_text(kg, r) + " => " + kg.predicate_name(r.head) + "(x,y)";
}

std::string rule_line(const KnowledgeGraph& kg, const Rule& r, const RuleStats& stats, double rho,
                      double score) {
    std::ostringstream out;
    out << rule_text(kg, r) << '\t' << stats.supp << '\t' << format_fixed(stats.conf) << '\t'
        << format_fixed(stats.hc) << '\t' << format_fixed(rho) << '\t' << format_fixed(score);
    return out.str();
}

namespace {

PredicateId parse_atom(const KnowledgeGraph& kg, std::string_view atom, std::size_t line_no) {
    std::size_t paren = atom.find('(');
    if (paren == std::string_view::npos || atom.back() != ')')
        throw ParseError("malformed atom `" + std::string(atom) + "`", line_no);
    std::string_view name = trim(atom.substr(0, paren));
    auto id = kg.predicate_id(name);
    if (!id) throw LookupError("unknown predicate `" + std::string(name) + "`");
    return *id;
}

double parse_double(std::string_view s, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("bad numeric field `" + std::string(s) + "`", line_no);
    return v;
}

}  // namespace

ParsedRuleLine parse_rule_line(const KnowledgeGraph& kg, std::string_view line,
                               std::size_t line_no) {
    auto cols = split(trim(line), '\t');
    if (cols.size() != 6) throw ParseError("expected 6 tab-separated columns", line_no);

    std::string_view text = cols[0];
    std::size_t arrow = text.find(" => ");
    if (arrow == std::string_view::npos) throw ParseError("missing `=>`", line_no);

    ParsedRuleLine out;
    std::string_view body = text.substr(0, arrow);
    std::string_view head = trim(text.substr(arrow + 4));
    out.rule.head = parse_atom(kg, head, line_no);

    std::size_t start = 0;
    while (start < body.size()) {
        std::size_t amp = body.find(" & ", start);
        std::string_view atom =
            trim(amp == std::string_view::npos ? body.substr(start) : body.substr(start, amp - start));
        out.rule.body.push_back(parse_atom(kg, atom, line_no));
        if (amp == std::string_view::npos) break;
        start = amp + 3;
    }
    if (out.rule.body.empty()) throw ParseError("rule has no body atoms", line_no);

    std::uint64_t supp = 0;
    auto s = cols[1];
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), supp);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("bad support field", line_no);
    out.supp = supp;
    out.conf = parse_double(cols[2], line_no);
    out.hc = parse_double(cols[3], line_no);
    out.rho = parse_double(cols[4], line_no);
    out.score = parse_double(cols[5], line_no);
    return out;
}

}  // namespace rulemine
