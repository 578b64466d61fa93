#include "automol/grammar.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "automol/errors.hpp"

namespace automol {

namespace {

bool is_nonterminal_token(const std::string& tok) {
    return tok.size() >= 3 && tok.front() == '<' && tok.back() == '>';
}

bool is_optional_token(const std::string& tok) {
    return tok.size() >= 5 && tok.front() == '[' && tok.back() == ']' &&
           tok[1] == '<' && tok[tok.size() - 2] == '>';
}

Symbol make_symbol(const std::string& tok) {
    if (is_optional_token(tok))
        return {Symbol::Kind::OptionalNonterminal, tok.substr(2, tok.size() - 4)};
    if (is_nonterminal_token(tok))
        return {Symbol::Kind::Nonterminal, tok.substr(1, tok.size() - 2)};
    return {Symbol::Kind::Terminal, tok};
}

std::string symbol_text(const Symbol& s) {
    switch (s.kind) {
        case Symbol::Kind::Terminal: return s.text;
        case Symbol::Kind::Nonterminal: return "<" + s.text + ">";
        case Symbol::Kind::OptionalNonterminal: return "[<" + s.text + ">]";
    }
    return s.text;
}

}  // namespace

std::vector<std::string> split_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

Grammar Grammar::parse(const std::string& text) {
    // A rule starts on a line containing `::=`; following lines without one
    // continue the current rule. `#` lines are comments.
    struct RawRule {
        std::string lhs;
        std::vector<std::string> rhs_tokens;
        std::size_t line;
    };
    std::vector<RawRule> raw;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;

        const auto sep = line.find("::=");
        if (sep != std::string::npos) {
            auto lhs_tokens = split_tokens(line.substr(0, sep));
            if (lhs_tokens.size() != 1 || !is_nonterminal_token(lhs_tokens[0]))
                throw GrammarError(GrammarError::Code::MalformedRule,
                                   "rule head must be a single <nonterminal>", lineno);
            RawRule r;
            r.lhs = lhs_tokens[0].substr(1, lhs_tokens[0].size() - 2);
            r.rhs_tokens = split_tokens(line.substr(sep + 3));
            r.line = lineno;
            raw.push_back(std::move(r));
        } else {
            if (raw.empty())
                throw GrammarError(GrammarError::Code::MalformedRule,
                                   "expected `<nonterminal> ::= ...`", lineno);
            auto extra = split_tokens(line);
            auto& dst = raw.back().rhs_tokens;
            dst.insert(dst.end(), extra.begin(), extra.end());
        }
    }
    if (raw.empty())
        throw GrammarError(GrammarError::Code::MalformedRule, "no rules found", 0);

    Grammar g;
    for (const auto& r : raw) {
        if (g.rule_index_.count(r.lhs))
            throw GrammarError(GrammarError::Code::DuplicateRule,
                               "nonterminal <" + r.lhs + "> defined twice", r.line);

        Rule rule;
        rule.lhs = r.lhs;
        rule.line = r.line;
        Alternative current;
        for (const auto& tok : r.rhs_tokens) {
            if (tok == "|") {
                if (current.symbols.empty())
                    throw GrammarError(GrammarError::Code::EmptyAlternative,
                                       "empty alternative in rule <" + r.lhs + ">", r.line);
                rule.alternatives.push_back(std::move(current));
                current = {};
            } else {
                current.symbols.push_back(make_symbol(tok));
            }
        }
        if (current.symbols.empty())
            throw GrammarError(GrammarError::Code::EmptyAlternative,
                               "empty alternative in rule <" + r.lhs + ">", r.line);
        rule.alternatives.push_back(std::move(current));

        g.rule_index_[rule.lhs] = static_cast<int>(g.rules_.size());
        g.rules_.push_back(std::move(rule));
    }

    for (const auto& rule : g.rules_)
        for (const auto& alt : rule.alternatives)
            for (const auto& sym : alt.symbols)
                if (!sym.is_terminal() && !g.rule_index_.count(sym.text))
                    throw GrammarError(GrammarError::Code::UndefinedNonterminal,
                                       "nonterminal <" + sym.text + "> referenced but never defined",
                                       rule.line);

    g.compute_min_depths();
    return g;
}

Grammar Grammar::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open grammar file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const Rule& Grammar::rule(const std::string& nonterminal) const {
    return rules_[static_cast<std::size_t>(rule_id(nonterminal))];
}

int Grammar::rule_id(const std::string& nonterminal) const {
    auto it = rule_index_.find(nonterminal);
    if (it == rule_index_.end())
        throw GrammarError(GrammarError::Code::UndefinedNonterminal,
                           "no rule for <" + nonterminal + ">");
    return it->second;
}

void Grammar::compute_min_depths() {
    // Fixpoint over: depth(NT) = 1 + min over alts of max over mandatory
    // nonterminal symbols. Optional symbols cost nothing (omittable).
    min_depth_.assign(rules_.size(), kDepthUnbounded);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            int best = kDepthUnbounded;
            for (const auto& alt : rules_[i].alternatives) {
                int worst = 0;
                for (const auto& sym : alt.symbols) {
                    if (sym.kind != Symbol::Kind::Nonterminal) continue;
                    worst = std::max(worst, min_depth_[static_cast<std::size_t>(
                                                rule_index_.at(sym.text))]);
                }
                best = std::min(best, worst >= kDepthUnbounded ? kDepthUnbounded : worst + 1);
            }
            if (best < min_depth_[i]) {
                min_depth_[i] = best;
                changed = true;
            }
        }
    }
}

int Grammar::min_depth(const std::string& nonterminal) const {
    return min_depth_[static_cast<std::size_t>(rule_id(nonterminal))];
}

GrammarStats Grammar::stats() const {
    std::set<std::string> terminals;
    for (const auto& rule : rules_)
        for (const auto& alt : rule.alternatives)
            for (const auto& sym : alt.symbols)
                if (sym.is_terminal()) terminals.insert(sym.text);
    return {rules_.size(), rules_.size(), terminals.size()};
}

ValidationReport Grammar::validate() const {
    ValidationReport report;

    std::vector<bool> reachable(rules_.size(), false);
    std::vector<int> queue = {0};
    reachable[0] = true;
    while (!queue.empty()) {
        const int id = queue.back();
        queue.pop_back();
        for (const auto& alt : rules_[static_cast<std::size_t>(id)].alternatives)
            for (const auto& sym : alt.symbols) {
                if (sym.is_terminal()) continue;
                const int child = rule_index_.at(sym.text);
                if (!reachable[static_cast<std::size_t>(child)]) {
                    reachable[static_cast<std::size_t>(child)] = true;
                    queue.push_back(child);
                }
            }
    }

    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (!reachable[i]) report.unreachable.push_back(rules_[i].lhs);
        if (min_depth_[i] >= kDepthUnbounded) report.nonproductive.push_back(rules_[i].lhs);
    }
    return report;
}

std::string Grammar::to_bnf() const {
    std::ostringstream out;
    for (const auto& rule : rules_) {
        out << '<' << rule.lhs << "> ::=";
        for (std::size_t a = 0; a < rule.alternatives.size(); ++a) {
            if (a) out << " |";
            for (const auto& sym : rule.alternatives[a].symbols) out << ' ' << symbol_text(sym);
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Derivation trees

namespace {

void collect_sentence(const DerivationNode& node, std::vector<std::string>& out) {
    if (node.symbol.is_terminal()) {
        out.push_back(node.symbol.text);
        return;
    }
    for (const auto& child : node.children) collect_sentence(child, out);
}

std::size_t count_nodes(const DerivationNode& node) {
    std::size_t n = 1;
    for (const auto& child : node.children) n += count_nodes(child);
    return n;
}

int node_depth(const DerivationNode& node) {
    if (node.symbol.is_terminal()) return 0;
    if (node.symbol.is_optional())
        return node.expanded ? node_depth(node.children[0]) : 0;
    int worst = 0;
    for (const auto& child : node.children) worst = std::max(worst, node_depth(child));
    return worst + 1;
}

}  // namespace

std::vector<std::string> DerivationTree::sentence() const {
    std::vector<std::string> out;
    collect_sentence(root, out);
    return out;
}

std::size_t DerivationTree::node_count() const { return count_nodes(root); }

int DerivationTree::depth() const { return node_depth(root); }

namespace {

DerivationNode grow_nonterminal(const Grammar& g, const std::string& name, Rng& rng, int budget);

DerivationNode grow(const Grammar& g, const Symbol& sym, Rng& rng, int budget) {
    if (sym.is_terminal()) return DerivationNode{sym};
    if (sym.is_optional()) {
        DerivationNode node{sym};
        const bool fits = g.min_depth(sym.text) <= budget;
        node.expanded = fits && rng.coin(0.5);
        if (node.expanded)
            node.children.push_back(
                grow_nonterminal(g, sym.text, rng, budget));
        return node;
    }
    return grow_nonterminal(g, sym.text, rng, budget);
}

DerivationNode grow_nonterminal(const Grammar& g, const std::string& name, Rng& rng, int budget) {
    const Rule& rule = g.rule(name);

    std::vector<int> feasible;
    for (std::size_t a = 0; a < rule.alternatives.size(); ++a) {
        bool ok = true;
        for (const auto& sym : rule.alternatives[a].symbols)
            if (sym.kind == Symbol::Kind::Nonterminal && g.min_depth(sym.text) > budget - 1) {
                ok = false;
                break;
            }
        if (ok) feasible.push_back(static_cast<int>(a));
    }
    if (feasible.empty())
        throw GrammarError(GrammarError::Code::DepthInfeasible,
                           "no alternative of <" + name + "> fits depth budget " +
                               std::to_string(budget));

    DerivationNode node{{Symbol::Kind::Nonterminal, name}};
    node.alternative = feasible[rng.index(feasible.size())];
    const auto& alt = rule.alternatives[static_cast<std::size_t>(node.alternative)];
    node.children.reserve(alt.symbols.size());
    for (const auto& sym : alt.symbols) node.children.push_back(grow(g, sym, rng, budget - 1));
    return node;
}

}  // namespace

DerivationNode grow_symbol(const Grammar& g, const Symbol& symbol, Rng& rng, int budget) {
    if (!symbol.is_terminal()) {
        // Clamp so regrowth is always feasible, e.g. when mutating a node
        // pushed deep by crossover.
        budget = std::max(budget, g.min_depth(symbol.text));
    }
    return grow(g, symbol, rng, budget);
}

DerivationTree random_derivation(const Grammar& g, Rng& rng, int depth_limit) {
    if (g.min_depth(g.start()) > depth_limit)
        throw GrammarError(GrammarError::Code::DepthInfeasible,
                           "depth limit " + std::to_string(depth_limit) +
                               " below minimal derivation depth " +
                               std::to_string(g.min_depth(g.start())));
    return {grow_nonterminal(g, g.start(), rng, depth_limit)};
}

// ---------------------------------------------------------------------------
// Sentence parsing (leftmost, ordered backtracking)

namespace {

// Full ordered backtracking in continuation-passing style. Alternatives are
// tried in declared order and, for optional symbols, expanded before omitted,
// so the first accepted parse is the canonical one. Plain recursive descent
// is not enough here: several alternatives of the same rule are prefixes of
// one another (the feature-group combinations), so a committed inner parse
// may need to be revisited when the tail fails.
struct ParseCtx {
    const Grammar& g;
    const std::vector<std::string>& tokens;
    std::size_t furthest = 0;                // furthest token ever matched
    std::size_t complete_at = std::string::npos;  // longest full derivation seen
};

using Cont = std::function<bool(std::size_t)>;

bool parse_symbol(ParseCtx& p, const Symbol& sym, std::size_t pos,
                  std::vector<DerivationNode>& out, const Cont& k);

bool parse_seq(ParseCtx& p, const std::vector<Symbol>& syms, std::size_t i, std::size_t pos,
               std::vector<DerivationNode>& out, const Cont& k) {
    if (i == syms.size()) return k(pos);
    return parse_symbol(p, syms[i], pos, out,
                        [&](std::size_t next) { return parse_seq(p, syms, i + 1, next, out, k); });
}

// Tries each alternative of <name>, writing the winning expansion into
// `node`. Every children vector is reserved to the alternative's full width
// before parsing starts, so no push during `k` can reallocate a vector that
// an enclosing frame still references.
bool parse_expansion(ParseCtx& p, const std::string& name, std::size_t pos, DerivationNode& node,
                     const Cont& k) {
    const Rule& rule = p.g.rule(name);
    for (std::size_t a = 0; a < rule.alternatives.size(); ++a) {
        node.alternative = static_cast<int>(a);
        node.children.clear();
        node.children.reserve(rule.alternatives[a].symbols.size());
        if (parse_seq(p, rule.alternatives[a].symbols, 0, pos, node.children, k)) return true;
    }
    node.children.clear();
    return false;
}

bool parse_symbol(ParseCtx& p, const Symbol& sym, std::size_t pos,
                  std::vector<DerivationNode>& out, const Cont& k) {
    const std::size_t slot = out.size();

    if (sym.is_terminal()) {
        if (pos >= p.tokens.size() || p.tokens[pos] != sym.text) return false;
        p.furthest = std::max(p.furthest, pos + 1);
        out.push_back(DerivationNode{sym});
        if (k(pos + 1)) return true;
        out.resize(slot);
        return false;
    }

    if (sym.is_optional()) {
        out.push_back(DerivationNode{sym});
        out[slot].expanded = true;
        out[slot].children.reserve(1);
        out[slot].children.push_back(DerivationNode{{Symbol::Kind::Nonterminal, sym.text}});
        if (parse_expansion(p, sym.text, pos, out[slot].children[0], k)) return true;
        out[slot].expanded = false;
        out[slot].children.clear();
        if (k(pos)) return true;
        out.resize(slot);
        return false;
    }

    out.push_back(DerivationNode{sym});
    if (parse_expansion(p, sym.text, pos, out[slot], k)) return true;
    out.resize(slot);
    return false;
}

}  // namespace

DerivationTree parse_sentence(const Grammar& g, const std::vector<std::string>& tokens) {
    ParseCtx p{g, tokens};
    DerivationNode root{{Symbol::Kind::Nonterminal, g.start()}};
    const Cont accept = [&](std::size_t end) {
        if (end == tokens.size()) return true;
        if (p.complete_at == std::string::npos || end > p.complete_at) p.complete_at = end;
        return false;
    };
    if (parse_expansion(p, g.start(), 0, root, accept)) return {std::move(root)};

    if (p.complete_at != std::string::npos)
        throw SentenceError(SentenceError::Code::TrailingTokens,
                            "complete derivation ends before token '" + tokens[p.complete_at] + "'",
                            p.complete_at);
    throw SentenceError(SentenceError::Code::Unparseable,
                        "token mismatch" + (p.furthest < tokens.size()
                                                ? " at '" + tokens[p.furthest] + "'"
                                                : std::string()),
                        p.furthest);
}

namespace {

bool node_valid(const Grammar& g, const DerivationNode& node) {
    if (node.symbol.is_terminal()) return node.children.empty();
    if (node.symbol.is_optional()) {
        if (!g.has_rule(node.symbol.text)) return false;
        if (!node.expanded) return node.children.empty();
        return node.children.size() == 1 &&
               node.children[0].symbol.kind == Symbol::Kind::Nonterminal &&
               node.children[0].symbol.text == node.symbol.text &&
               node_valid(g, node.children[0]);
    }

    if (!g.has_rule(node.symbol.text)) return false;
    const Rule& rule = g.rule(node.symbol.text);
    if (node.alternative < 0 ||
        node.alternative >= static_cast<int>(rule.alternatives.size()))
        return false;
    const auto& alt = rule.alternatives[static_cast<std::size_t>(node.alternative)];
    if (node.children.size() != alt.symbols.size()) return false;
    for (std::size_t i = 0; i < alt.symbols.size(); ++i) {
        if (node.children[i].symbol != alt.symbols[i]) return false;
        if (!node_valid(g, node.children[i])) return false;
    }
    return true;
}

}  // namespace

bool tree_valid(const Grammar& g, const DerivationTree& t) {
    return t.root.symbol.kind == Symbol::Kind::Nonterminal &&
           t.root.symbol.text == g.start() && node_valid(g, t.root);
}

}  // namespace automol
