#include "automol/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <queue>

#include "automol/errors.hpp"

namespace automol {

namespace {

const std::map<std::string, double>& mass_table() {
    static const std::map<std::string, double> masses = {
        {"H", 1.008},   {"B", 10.81},   {"C", 12.011},  {"N", 14.007},  {"O", 15.999},
        {"F", 18.998},  {"Na", 22.990}, {"Mg", 24.305}, {"Al", 26.982}, {"Si", 28.085},
        {"P", 30.974},  {"S", 32.06},   {"Cl", 35.45},  {"K", 39.098},  {"Ca", 40.078},
        {"Fe", 55.845}, {"Cu", 63.546}, {"Zn", 65.38},  {"As", 74.922}, {"Se", 78.971},
        {"Br", 79.904}, {"I", 126.904}, {"Li", 6.94},
    };
    return masses;
}

}  // namespace

double element_mass(const std::string& element) {
    auto it = mass_table().find(element);
    if (it == mass_table().end()) throw DataError("no atomic mass for element " + element);
    return it->second;
}

const std::vector<int>& allowed_valences(const std::string& element) {
    static const std::map<std::string, std::vector<int>> table = {
        {"B", {3}},  {"C", {4}},  {"N", {3}},  {"O", {2}},  {"P", {3, 5}},
        {"S", {2, 4, 6}}, {"F", {1}}, {"Cl", {1}}, {"Br", {1}}, {"I", {1}},
    };
    static const std::vector<int> none;
    auto it = table.find(element);
    return it == table.end() ? none : it->second;
}

int MoleculeGraph::bond_order_sum(int i) const {
    int sum = 0;
    for (const auto& [j, b] : adj[static_cast<std::size_t>(i)]) {
        (void)j;
        const BondOrder o = bonds[static_cast<std::size_t>(b)].order;
        sum += o == BondOrder::Aromatic ? 1 : static_cast<int>(o);
    }
    return sum;
}

bool MoleculeGraph::atom_in_ring(int i) const {
    for (const auto& [j, b] : adj[static_cast<std::size_t>(i)]) {
        (void)j;
        if (bonds[static_cast<std::size_t>(b)].in_ring) return true;
    }
    return false;
}

void MoleculeGraph::rebuild_adjacency() {
    adj.assign(atoms.size(), {});
    for (std::size_t b = 0; b < bonds.size(); ++b) {
        adj[static_cast<std::size_t>(bonds[b].i)].emplace_back(bonds[b].j, static_cast<int>(b));
        adj[static_cast<std::size_t>(bonds[b].j)].emplace_back(bonds[b].i, static_cast<int>(b));
    }
}

std::vector<std::vector<int>> shortest_paths(const MoleculeGraph& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
    for (std::size_t s = 0; s < n; ++s) {
        dist[s][s] = 0;
        std::queue<int> frontier;
        frontier.push(static_cast<int>(s));
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (const auto& [v, b] : m.adj[static_cast<std::size_t>(u)]) {
                (void)b;
                if (dist[s][static_cast<std::size_t>(v)] == kUnreachable) {
                    dist[s][static_cast<std::size_t>(v)] = dist[s][static_cast<std::size_t>(u)] + 1;
                    frontier.push(v);
                }
            }
        }
    }
    return dist;
}

namespace {

struct PendingBond {
    bool present = false;
    BondOrder order = BondOrder::Single;
    bool implicit = true;  // no bond symbol written
};

struct RingSlot {
    int atom = -1;
    PendingBond bond;
    std::size_t offset = 0;
};

bool is_aromatic_organic(char c) {
    return c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's';
}

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    MoleculeGraph mol;
    std::vector<int> branch_stack;
    int prev = -1;
    PendingBond pending;
    std::map<int, RingSlot> ring_open;
    // Bonds written without a symbol between two aromatic atoms stay marked
    // until ring perception decides aromatic vs single.
    std::vector<bool> bond_implicit;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(SmilesError::Code code, const std::string& msg, std::size_t at) {
        throw SmilesError(code, msg, at);
    }

    int add_atom(Atom atom, std::size_t at) {
        atom.offset = at;
        mol.atoms.push_back(std::move(atom));
        return static_cast<int>(mol.atoms.size()) - 1;
    }

    void bond_to_prev(int idx, std::size_t at) {
        if (prev >= 0) {
            add_bond(prev, idx, pending, at);
        } else if (pending.present) {
            fail(SmilesError::Code::Syntax, "bond symbol with no preceding atom", at);
        }
        pending = {};
        prev = idx;
    }

    void add_bond(int i, int j, const PendingBond& pb, std::size_t at) {
        if (i == j) fail(SmilesError::Code::Syntax, "self-bond", at);
        for (const auto& bond : mol.bonds)
            if ((bond.i == i && bond.j == j) || (bond.i == j && bond.j == i))
                fail(SmilesError::Code::Syntax, "duplicate bond", at);
        Bond bond;
        bond.i = i;
        bond.j = j;
        bond.order = pb.present ? pb.order : BondOrder::Single;
        mol.bonds.push_back(bond);
        bond_implicit.push_back(!pb.present);
    }

    void parse_organic_atom() {
        const std::size_t at = pos;
        char c = text[pos];
        if (std::isupper(static_cast<unsigned char>(c))) {
            std::string sym(1, c);
            if ((c == 'C' && peek_next() == 'l') || (c == 'B' && peek_next() == 'r')) {
                sym += text[pos + 1];
                ++pos;
            }
            static const std::string organic[] = {"B", "C", "N", "O", "P",
                                                  "S", "F", "Cl", "Br", "I"};
            if (std::find(std::begin(organic), std::end(organic), sym) == std::end(organic))
                fail(SmilesError::Code::UnknownAtomSymbol, "atom '" + sym + "' needs brackets", at);
            ++pos;
            Atom a;
            a.element = sym;
            bond_to_prev(add_atom(std::move(a), at), at);
        } else {
            if (!is_aromatic_organic(c))
                fail(SmilesError::Code::UnknownAtomSymbol, std::string("unknown atom '") + c + "'",
                     at);
            ++pos;
            Atom a;
            a.element = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
            a.aromatic = true;
            bond_to_prev(add_atom(std::move(a), at), at);
        }
    }

    char peek_next() const { return pos + 1 < text.size() ? text[pos + 1] : '\0'; }

    void parse_bracket_atom() {
        const std::size_t at = pos;
        ++pos;  // '['
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;  // isotope, discarded

        if (pos >= text.size()) fail(SmilesError::Code::Syntax, "unterminated bracket atom", at);
        Atom a;
        a.bracket = true;
        char c = text[pos];
        if (std::isupper(static_cast<unsigned char>(c))) {
            a.element = std::string(1, c);
            ++pos;
            if (pos < text.size() && std::islower(static_cast<unsigned char>(text[pos])) &&
                text[pos] != 'h') {  // lone 'h' after element is the H count
                a.element += text[pos];
                ++pos;
            }
        } else if (is_aromatic_organic(c)) {
            a.element = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
            a.aromatic = true;
            ++pos;
        } else {
            fail(SmilesError::Code::UnknownAtomSymbol, std::string("unknown atom '") + c + "'",
                 pos);
        }
        if (!mass_table().count(a.element))
            fail(SmilesError::Code::UnknownAtomSymbol, "unknown atom '" + a.element + "'", at);

        while (pos < text.size() && text[pos] != ']') {
            char t = text[pos];
            if (t == '@') {
                ++pos;  // chirality, discarded
            } else if (t == 'H') {
                ++pos;
                int count = 1;
                if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    count = 0;
                    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                        count = count * 10 + (text[pos++] - '0');
                }
                a.hydrogens = count;
            } else if (t == '+' || t == '-') {
                const int sign = t == '+' ? 1 : -1;
                ++pos;
                if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    int mag = 0;
                    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                        mag = mag * 10 + (text[pos++] - '0');
                    a.charge = sign * mag;
                } else {
                    a.charge = sign;
                    while (pos < text.size() && text[pos] == t) {  // ++ / -- style
                        a.charge += sign;
                        ++pos;
                    }
                }
            } else if (t == ':') {
                ++pos;  // atom-map class, discarded
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
            } else {
                fail(SmilesError::Code::Syntax, std::string("unexpected '") + t + "' in brackets",
                     pos);
            }
        }
        if (pos >= text.size()) fail(SmilesError::Code::Syntax, "unterminated bracket atom", at);
        ++pos;  // ']'

        bond_to_prev(add_atom(std::move(a), at), at);
    }

    void parse_ring_closure(int number, std::size_t at) {
        if (prev < 0) fail(SmilesError::Code::Syntax, "ring closure before any atom", at);
        auto it = ring_open.find(number);
        if (it == ring_open.end()) {
            ring_open[number] = {prev, pending, at};
        } else {
            const RingSlot slot = it->second;
            ring_open.erase(it);
            PendingBond bond = pending;
            if (slot.bond.present && bond.present && slot.bond.order != bond.order)
                fail(SmilesError::Code::Syntax, "conflicting ring-closure bond orders", at);
            if (!bond.present) bond = slot.bond;
            add_bond(slot.atom, prev, bond, at);
        }
        pending = {};
    }

    void run() {
        while (pos < text.size()) {
            const char c = text[pos];
            const std::size_t at = pos;
            if (c == '[') {
                parse_bracket_atom();
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                parse_organic_atom();
            } else if (c == '-' || c == '/' || c == '\\') {
                pending = {true, BondOrder::Single, false};
                ++pos;
            } else if (c == '=') {
                pending = {true, BondOrder::Double, false};
                ++pos;
            } else if (c == '#') {
                pending = {true, BondOrder::Triple, false};
                ++pos;
            } else if (c == '(') {
                if (prev < 0) fail(SmilesError::Code::Syntax, "branch before any atom", at);
                branch_stack.push_back(prev);
                ++pos;
            } else if (c == ')') {
                if (branch_stack.empty())
                    fail(SmilesError::Code::UnmatchedParenthesis, "')' without '('", at);
                if (pending.present)
                    fail(SmilesError::Code::Syntax, "dangling bond before ')'", at);
                prev = branch_stack.back();
                branch_stack.pop_back();
                ++pos;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                parse_ring_closure(c - '0', at);
                ++pos;
            } else if (c == '%') {
                if (pos + 2 >= text.size() ||
                    !std::isdigit(static_cast<unsigned char>(text[pos + 1])) ||
                    !std::isdigit(static_cast<unsigned char>(text[pos + 2])))
                    fail(SmilesError::Code::Syntax, "'%' needs two digits", at);
                parse_ring_closure((text[pos + 1] - '0') * 10 + (text[pos + 2] - '0'), at);
                pos += 3;
            } else if (c == '.') {
                if (pending.present)
                    fail(SmilesError::Code::Syntax, "bond symbol before '.'", at);
                prev = -1;
                ++pos;
            } else {
                fail(SmilesError::Code::Syntax, std::string("unexpected character '") + c + "'",
                     at);
            }
        }
        if (!branch_stack.empty())
            fail(SmilesError::Code::UnmatchedParenthesis, "'(' never closed", text.size());
        if (!ring_open.empty())
            fail(SmilesError::Code::UnmatchedRingClosure,
                 "ring bond " + std::to_string(ring_open.begin()->first) + " never closed",
                 ring_open.begin()->second.offset);
        if (pending.present)
            fail(SmilesError::Code::Syntax, "dangling bond at end of input", text.size());
        if (mol.atoms.empty())
            fail(SmilesError::Code::Syntax, "empty SMILES", 0);
    }
};

// A bond lies on a cycle iff its endpoints stay connected without it.
void mark_ring_bonds(MoleculeGraph& m) {
    for (std::size_t b = 0; b < m.bonds.size(); ++b) {
        std::vector<bool> seen(m.size(), false);
        std::vector<int> stack = {m.bonds[b].i};
        seen[static_cast<std::size_t>(m.bonds[b].i)] = true;
        bool reached = false;
        while (!stack.empty() && !reached) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto& [v, bi] : m.adj[static_cast<std::size_t>(u)]) {
                if (bi == static_cast<int>(b) || seen[static_cast<std::size_t>(v)]) continue;
                if (v == m.bonds[b].j) {
                    reached = true;
                    break;
                }
                seen[static_cast<std::size_t>(v)] = true;
                stack.push_back(v);
            }
        }
        m.bonds[b].in_ring = reached;
    }
}

void assign_hydrogens_and_check(MoleculeGraph& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        Atom& a = m.atoms[i];
        const auto& valences = allowed_valences(a.element);
        const int bond_sum = m.bond_order_sum(static_cast<int>(i));

        if (!valences.empty()) {
            const int budget = bond_sum + (a.bracket ? a.hydrogens : 0);
            if (budget > valences.back() + a.charge)
                throw SmilesError(SmilesError::Code::ValenceExceeded,
                                  a.element + " with bond sum " + std::to_string(budget),
                                  a.offset);
        }
        if (a.bracket || valences.empty()) continue;  // hydrogens are explicit

        int v = valences.back();
        for (const int cand : valences)
            if (cand >= bond_sum) {
                v = cand;
                break;
            }
        // Aromatic atoms hold one valence back for the ring system.
        a.hydrogens = std::max(0, v + a.charge - bond_sum - (a.aromatic ? 1 : 0));
    }
}

}  // namespace

MoleculeGraph parse_smiles(const std::string& text) {
    Parser p(text);
    p.run();
    MoleculeGraph m = std::move(p.mol);
    m.rebuild_adjacency();
    mark_ring_bonds(m);

    // An implicitly written bond between two aromatic atoms is aromatic when
    // it lies on a cycle; biphenyl-style links between rings stay single.
    for (std::size_t b = 0; b < m.bonds.size(); ++b) {
        if (!p.bond_implicit[b]) continue;
        const Atom& x = m.atoms[static_cast<std::size_t>(m.bonds[b].i)];
        const Atom& y = m.atoms[static_cast<std::size_t>(m.bonds[b].j)];
        if (x.aromatic && y.aromatic && m.bonds[b].in_ring) m.bonds[b].order = BondOrder::Aromatic;
    }

    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.atoms[i].aromatic && !m.atom_in_ring(static_cast<int>(i)))
            throw SmilesError(SmilesError::Code::AromaticOutsideRing,
                              "aromatic " + m.atoms[i].element + " outside any ring",
                              m.atoms[i].offset);

    assign_hydrogens_and_check(m);
    return m;
}

}  // namespace automol
