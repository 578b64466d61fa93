#include "automol/descriptors.hpp"

#include <algorithm>
#include <cmath>

namespace automol {

namespace {

std::vector<int> component_labels(const MoleculeGraph& m, int& n_components) {
    std::vector<int> label(m.size(), -1);
    n_components = 0;
    for (std::size_t s = 0; s < m.size(); ++s) {
        if (label[s] >= 0) continue;
        std::vector<int> stack = {static_cast<int>(s)};
        label[s] = n_components;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto& [v, b] : m.adj[static_cast<std::size_t>(u)]) {
                (void)b;
                if (label[static_cast<std::size_t>(v)] < 0) {
                    label[static_cast<std::size_t>(v)] = n_components;
                    stack.push_back(v);
                }
            }
        }
        ++n_components;
    }
    return label;
}

bool is_n_or_o(const Atom& a) { return a.element == "N" || a.element == "O"; }

}  // namespace

std::vector<std::string> general_descriptor_names() {
    return {"MW",  "HeavyAtoms", "nB",  "nC",  "nN",    "nO",   "nP",
            "nS",  "nF",         "nCl", "nBr", "nI",    "AromaticAtoms",
            "Rings", "HBD",      "HBA", "RotatableBonds", "NetCharge"};
}

std::vector<double> general_descriptors(const MoleculeGraph& m) {
    static const std::vector<std::string> counted = {"B", "C", "N", "O", "P",
                                                     "S", "F", "Cl", "Br", "I"};
    double mw = 0.0;
    double heavy = 0.0;
    std::vector<double> per_element(counted.size(), 0.0);
    double aromatic = 0.0, donors = 0.0, acceptors = 0.0, charge = 0.0;

    for (const auto& a : m.atoms) {
        mw += element_mass(a.element) + a.hydrogens * element_mass("H");
        if (a.element != "H") heavy += 1.0;
        for (std::size_t e = 0; e < counted.size(); ++e)
            if (a.element == counted[e]) per_element[e] += 1.0;
        if (a.aromatic) aromatic += 1.0;
        if (is_n_or_o(a) && a.hydrogens >= 1) donors += 1.0;
        if (is_n_or_o(a)) acceptors += 1.0;
        charge += a.charge;
    }

    int n_components = 0;
    component_labels(m, n_components);
    const double rings = static_cast<double>(m.bonds.size()) - static_cast<double>(m.size()) +
                         n_components;

    double rotatable = 0.0;
    for (const auto& b : m.bonds)
        if (b.order == BondOrder::Single && !b.in_ring && m.degree(b.i) >= 2 &&
            m.degree(b.j) >= 2)
            rotatable += 1.0;

    std::vector<double> out = {mw, heavy};
    out.insert(out.end(), per_element.begin(), per_element.end());
    out.insert(out.end(), {aromatic, rings, donors, acceptors, rotatable, charge});
    return out;
}

std::vector<std::string> advanced_descriptor_names() {
    return {"Wiener", "Randic", "Zagreb1", "Zagreb2", "Radius", "Diameter"};
}

std::vector<double> advanced_descriptors(const MoleculeGraph& m) {
    const auto dist = shortest_paths(m);
    const std::size_t n = m.size();

    double wiener = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dist[i][j] != kUnreachable) wiener += dist[i][j];

    double randic = 0.0, zagreb2 = 0.0;
    for (const auto& b : m.bonds) {
        const double di = m.degree(b.i), dj = m.degree(b.j);
        randic += 1.0 / std::sqrt(di * dj);
        zagreb2 += di * dj;
    }

    double zagreb1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = m.degree(static_cast<int>(i));
        zagreb1 += d * d;
    }

    // Radius/diameter per component, summed across components.
    int n_components = 0;
    const auto label = component_labels(m, n_components);
    std::vector<int> comp_radius(static_cast<std::size_t>(n_components), 1 << 30);
    std::vector<int> comp_diameter(static_cast<std::size_t>(n_components), 0);
    for (std::size_t i = 0; i < n; ++i) {
        int ecc = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (dist[i][j] != kUnreachable) ecc = std::max(ecc, dist[i][j]);
        auto& r = comp_radius[static_cast<std::size_t>(label[i])];
        auto& d = comp_diameter[static_cast<std::size_t>(label[i])];
        r = std::min(r, ecc);
        d = std::max(d, ecc);
    }
    double radius = 0.0, diameter = 0.0;
    for (int c = 0; c < n_components; ++c) {
        radius += comp_radius[static_cast<std::size_t>(c)];
        diameter += comp_diameter[static_cast<std::size_t>(c)];
    }

    return {wiener, randic, zagreb1, zagreb2, radius, diameter};
}

const char* const kSignatureClassNames[kSignatureClasses] = {
    "hydrophobic", "donor", "acceptor", "positive", "negative", "aromatic"};

std::vector<std::vector<bool>> signature_classes(const MoleculeGraph& m) {
    std::vector<std::vector<bool>> cls(m.size(), std::vector<bool>(kSignatureClasses, false));
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Atom& a = m.atoms[i];
        bool near_hetero = false;
        for (const auto& [j, b] : m.adj[i]) {
            (void)b;
            if (is_n_or_o(m.atoms[static_cast<std::size_t>(j)])) near_hetero = true;
        }
        cls[i][0] = (a.element == "C" || a.element == "S") && !near_hetero;
        cls[i][1] = is_n_or_o(a) && a.hydrogens >= 1;
        cls[i][2] = is_n_or_o(a);
        cls[i][3] = a.charge > 0;
        cls[i][4] = a.charge < 0;
        cls[i][5] = a.aromatic;
    }
    return cls;
}

std::vector<std::string> signature_names(int max_distance) {
    std::vector<std::string> names;
    for (int p = 0; p < kSignatureClasses; ++p)
        for (int q = p; q < kSignatureClasses; ++q)
            for (int d = 1; d <= max_distance; ++d)
                names.push_back(std::string(kSignatureClassNames[p]) + "_" +
                                kSignatureClassNames[q] + "_d" + std::to_string(d));
    return names;
}

std::vector<double> graph_signatures(const MoleculeGraph& m, int max_distance) {
    const auto cls = signature_classes(m);
    const auto dist = shortest_paths(m);
    const std::size_t n = m.size();

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(kSignatureClasses * (kSignatureClasses + 1) / 2 *
                                         max_distance));
    for (int p = 0; p < kSignatureClasses; ++p)
        for (int q = p; q < kSignatureClasses; ++q)
            for (int d = 1; d <= max_distance; ++d) {
                double count = 0.0;
                for (std::size_t u = 0; u < n; ++u)
                    for (std::size_t v = u + 1; v < n; ++v) {
                        if (dist[u][v] == kUnreachable || dist[u][v] > d) continue;
                        const bool direct = cls[u][static_cast<std::size_t>(p)] &&
                                            cls[v][static_cast<std::size_t>(q)];
                        const bool swapped = cls[u][static_cast<std::size_t>(q)] &&
                                             cls[v][static_cast<std::size_t>(p)];
                        if (direct || swapped) count += 1.0;
                    }
                out.push_back(count);
            }
    return out;
}

}  // namespace automol
