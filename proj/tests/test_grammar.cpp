#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "automol/errors.hpp"
#include "automol/grammar.hpp"

using namespace automol;

namespace {

const char* kToy = R"(# toy grammar
<S> ::= <A> end | loop <S>
<A> ::= x | y <B>
<B> ::= z
)";

Grammar toy() { return Grammar::parse(kToy); }

Grammar shipped() { return Grammar::parse_file("grammars/pipeline.bnf"); }

}  // namespace

TEST_CASE("grammar parsing basics") {
    Grammar g = toy();
    CHECK(g.start() == "S");
    CHECK(g.rules().size() == 3);
    CHECK(g.rule("S").alternatives.size() == 2);
    CHECK(g.rule("A").alternatives.size() == 2);
    CHECK(g.rule("A").alternatives[1].symbols[0].text == "y");
    CHECK(g.rule("A").alternatives[1].symbols[1].kind == Symbol::Kind::Nonterminal);
    CHECK(g.has_rule("B"));
    CHECK_FALSE(g.has_rule("C"));
}

TEST_CASE("continuation lines extend the previous rule") {
    Grammar g = Grammar::parse("<S> ::= a | b\n      | c\n");
    CHECK(g.rule("S").alternatives.size() == 3);
    CHECK(g.rule("S").alternatives[2].symbols[0].text == "c");
}

TEST_CASE("grammar error reporting carries line numbers") {
    auto code_of = [](const char* text) {
        try {
            Grammar::parse(text);
        } catch (const GrammarError& e) {
            return e.code();
        }
        FAIL("expected GrammarError");
        return GrammarError::Code::MalformedRule;
    };
    CHECK(code_of("<S> a b\n") == GrammarError::Code::MalformedRule);
    CHECK(code_of("<S> ::= a\n<S> ::= b\n") == GrammarError::Code::DuplicateRule);
    CHECK(code_of("<S> ::= a | | b\n") == GrammarError::Code::EmptyAlternative);
    CHECK(code_of("<S> ::= <T>\n") == GrammarError::Code::UndefinedNonterminal);

    try {
        Grammar::parse("<S> ::= a\n<S> ::= b\n");
        FAIL("expected GrammarError");
    } catch (const GrammarError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("stats count distinct nonterminals and terminals") {
    GrammarStats s = toy().stats();
    CHECK(s.rule_count == 3);
    CHECK(s.nonterminal_count == 3);
    // terminals: end, loop, x, y, z
    CHECK(s.terminal_count == 5);
}

TEST_CASE("min_depth fixpoint") {
    Grammar g = toy();
    // <B> -> z finishes in one expansion; <A> best case x; <S> needs <A> end.
    CHECK(g.min_depth("B") == 1);
    CHECK(g.min_depth("A") == 1);
    CHECK(g.min_depth("S") == 2);
}

TEST_CASE("validate flags unreachable and nonproductive rules") {
    Grammar g = Grammar::parse(
        "<S> ::= a | <Loop>\n"
        "<Loop> ::= <Loop> x\n"
        "<Island> ::= b\n");
    ValidationReport r = g.validate();
    CHECK_FALSE(r.clean());
    CHECK(std::set<std::string>(r.unreachable.begin(), r.unreachable.end()) ==
          std::set<std::string>{"Island"});
    CHECK(std::set<std::string>(r.nonproductive.begin(), r.nonproductive.end()) ==
          std::set<std::string>{"Loop"});
}

TEST_CASE("shipped grammar validates clean") {
    Grammar g = shipped();
    ValidationReport r = g.validate();
    CHECK(r.unreachable.empty());
    CHECK(r.nonproductive.empty());
}

TEST_CASE("shipped grammar offers 31 feature-group combinations") {
    Grammar g = shipped();
    CHECK(g.rule("feature_definition").alternatives.size() == 31);
}

TEST_CASE("to_bnf round-trips structurally") {
    Grammar g = shipped();
    Grammar reparsed = Grammar::parse(g.to_bnf());
    REQUIRE(reparsed.rules().size() == g.rules().size());
    for (std::size_t i = 0; i < g.rules().size(); ++i) {
        CHECK(reparsed.rules()[i].lhs == g.rules()[i].lhs);
        CHECK(reparsed.rules()[i].alternatives == g.rules()[i].alternatives);
    }
}

TEST_CASE("random derivations respect the depth budget and round-trip") {
    Grammar g = shipped();
    for (int seed = 0; seed < 300; ++seed) {
        Rng rng(seed);
        DerivationTree t = random_derivation(g, rng, 20);
        CHECK(t.depth() <= 20);
        CHECK(tree_valid(g, t));
        std::vector<std::string> sentence = t.sentence();
        REQUIRE(!sentence.empty());
        DerivationTree back = parse_sentence(g, sentence);
        CHECK(back.sentence() == sentence);
    }
}

TEST_CASE("random derivation is deterministic per seed") {
    Grammar g = shipped();
    Rng a(99);
    Rng b(99);
    CHECK(random_derivation(g, a).sentence() == random_derivation(g, b).sentence());
}

TEST_CASE("depth limit below the minimum is rejected") {
    Grammar g = toy();
    Rng rng(1);
    CHECK_THROWS_AS(random_derivation(g, rng, 1), GrammarError);
    CHECK_NOTHROW(random_derivation(g, rng, 2));
}

TEST_CASE("recursive grammar stays under a tight budget") {
    Grammar g = toy();
    for (int seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        DerivationTree t = random_derivation(g, rng, 5);
        CHECK(t.depth() <= 5);
        CHECK(tree_valid(g, t));
    }
}

TEST_CASE("parser backtracks across nonterminal boundaries") {
    // <A>'s first alternative eats "a b", starving the trailing "b"; the
    // parser must revisit and pick the shorter alternative.
    Grammar g = Grammar::parse(
        "<S> ::= <A> b\n"
        "<A> ::= <B>\n"
        "<B> ::= a b | a\n");
    DerivationTree t = parse_sentence(g, {"a", "b"});
    CHECK(t.sentence() == std::vector<std::string>{"a", "b"});
    DerivationTree t2 = parse_sentence(g, {"a", "b", "b"});
    CHECK(t2.sentence() == std::vector<std::string>{"a", "b", "b"});
}

TEST_CASE("alternatives are tried in declared order") {
    Grammar g = Grammar::parse("<S> ::= <A> <A>\n<A> ::= a | a a\n");
    // "a a a" forces the second alternative somewhere; leftmost-first order
    // means the first <A> takes the single-token parse.
    DerivationTree t = parse_sentence(g, {"a", "a", "a"});
    CHECK(t.root.children[0].alternative == 0);
    CHECK(t.root.children[1].alternative == 1);
}

TEST_CASE("optional markers prefer expansion, can be omitted") {
    Grammar g = Grammar::parse("<S> ::= start [<Opt>] end\n<Opt> ::= mid\n");
    DerivationTree with = parse_sentence(g, {"start", "mid", "end"});
    CHECK(with.sentence() == std::vector<std::string>{"start", "mid", "end"});
    DerivationTree without = parse_sentence(g, {"start", "end"});
    CHECK(without.sentence() == std::vector<std::string>{"start", "end"});
    CHECK(tree_valid(g, with));
    CHECK(tree_valid(g, without));
}

TEST_CASE("sentence errors carry position information") {
    Grammar g = shipped();
    try {
        parse_sentence(g, {"General_Descriptors", "bogus_token"});
        FAIL("expected SentenceError");
    } catch (const SentenceError& e) {
        CHECK(e.code() == SentenceError::Code::Unparseable);
        CHECK(std::string(e.what()).find("bogus_token") != std::string::npos);
    }

    std::vector<std::string> trailing = {"General_Descriptors", "DecisionTree", "3", "3"};
    try {
        parse_sentence(g, trailing);
        FAIL("expected SentenceError");
    } catch (const SentenceError& e) {
        CHECK(e.code() == SentenceError::Code::TrailingTokens);
        CHECK(e.position() == 3);
    }

    CHECK_THROWS_AS(parse_sentence(g, {}), SentenceError);
}

TEST_CASE("tree_valid rejects corrupted trees") {
    Grammar g = shipped();
    Rng rng(7);
    DerivationTree t = random_derivation(g, rng);
    REQUIRE(tree_valid(g, t));
    DerivationTree broken = t;
    broken.root.alternative = 9999;
    CHECK_FALSE(tree_valid(g, broken));
    DerivationTree pruned = t;
    REQUIRE(!pruned.root.children.empty());
    pruned.root.children.pop_back();
    CHECK_FALSE(tree_valid(g, pruned));
}

TEST_CASE("token helpers") {
    CHECK(split_tokens("  a\tb\nc ") == std::vector<std::string>{"a", "b", "c"});
    CHECK(join_tokens({"a", "b", "c"}) == "a b c");
    CHECK(split_tokens("") == std::vector<std::string>{});
}
