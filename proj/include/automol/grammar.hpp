#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "automol/rng.hpp"

namespace automol {

// A grammar symbol: terminal token, nonterminal, or optional nonterminal
// (the `[<X>]` sugar, expandable or omittable at derivation time).
struct Symbol {
    enum class Kind { Terminal, Nonterminal, OptionalNonterminal };

    Kind kind = Kind::Terminal;
    std::string text;  // token text, or nonterminal name without angle brackets

    bool is_terminal() const { return kind == Kind::Terminal; }
    bool is_optional() const { return kind == Kind::OptionalNonterminal; }

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Alternative {
    std::vector<Symbol> symbols;

    friend bool operator==(const Alternative&, const Alternative&) = default;
};

struct Rule {
    std::string lhs;
    std::vector<Alternative> alternatives;
    std::size_t line = 0;
};

struct GrammarStats {
    std::size_t rule_count = 0;
    std::size_t nonterminal_count = 0;
    std::size_t terminal_count = 0;
};

struct ValidationReport {
    std::vector<std::string> unreachable;     // not derivable from start
    std::vector<std::string> nonproductive;   // cannot reach a finite sentence

    bool clean() const { return unreachable.empty() && nonproductive.empty(); }
};

// Context-free grammar over whitespace-separated tokens. Rule order and
// alternative order are preserved exactly as written; alternative order is
// semantic (parse tie-breaking).
class Grammar {
public:
    static Grammar parse(const std::string& text);
    static Grammar parse_file(const std::string& path);

    const std::string& start() const { return rules_[0].lhs; }
    const std::vector<Rule>& rules() const { return rules_; }

    bool has_rule(const std::string& nonterminal) const {
        return rule_index_.count(nonterminal) != 0;
    }
    const Rule& rule(const std::string& nonterminal) const;
    int rule_id(const std::string& nonterminal) const;

    GrammarStats stats() const;
    ValidationReport validate() const;

    // Minimal number of expansion levels needed to finish a derivation of
    // `nonterminal`; a large sentinel for nonproductive symbols.
    int min_depth(const std::string& nonterminal) const;
    int min_depth(int rule_id) const { return min_depth_[rule_id]; }

    std::string to_bnf() const;

private:
    std::vector<Rule> rules_;
    std::unordered_map<std::string, int> rule_index_;
    std::vector<int> min_depth_;

    void compute_min_depths();
};

constexpr int kDepthUnbounded = 1 << 20;

// Parse-tree node. Optional nodes are always materialized so the
// expanded/omitted choice is part of the genome; an omitted optional
// contributes nothing to the frontier.
struct DerivationNode {
    Symbol symbol;
    int alternative = -1;  // chosen alternative, nonterminal nodes only
    bool expanded = false; // optional nodes only
    std::vector<DerivationNode> children;

    DerivationNode() = default;
    explicit DerivationNode(Symbol s) : symbol(std::move(s)) {}
};

struct DerivationTree {
    DerivationNode root;

    std::vector<std::string> sentence() const;
    std::size_t node_count() const;
    int depth() const;  // nonterminal expansion levels
};

// Uniformly random derivation among alternatives whose minimal completion
// fits the remaining depth budget; optional nonterminals expand with
// probability 0.5 when the budget allows. Throws GrammarError
// (DepthInfeasible) if depth_limit is below the start symbol's minimum.
DerivationTree random_derivation(const Grammar& g, Rng& rng, int depth_limit = 20);

// Regrow a subtree for `symbol` under the given budget; used by mutation.
DerivationNode grow_symbol(const Grammar& g, const Symbol& symbol, Rng& rng, int budget);

// Leftmost derivation of `tokens`, trying alternatives in declared order and
// keeping the first that lets the remainder parse. Throws SentenceError.
DerivationTree parse_sentence(const Grammar& g, const std::vector<std::string>& tokens);

bool tree_valid(const Grammar& g, const DerivationTree& t);

std::string join_tokens(const std::vector<std::string>& tokens);
std::vector<std::string> split_tokens(const std::string& text);

}  // namespace automol
