#pragma once

#include <string>
#include <vector>

#include "cremona/charts.hpp"

namespace cremona {

// Integer class (d; m_1, ..., m_m) in the basis H, E_1, ..., E_m with
// intersection form diag(1, -1, ..., -1).
struct DivisorClass {
    std::vector<long> coeffs;

    long intersect(const DivisorClass& o) const;
    long self_intersection() const { return intersect(*this); }
};

// The strict transforms of Q and of the exceptional curves on the fully
// blown-up surface, with chart-derived multiplicities and proximities.
struct TowerClasses {
    int n = 0;
    int m = 0;                          // tower length 4 + 2n
    DivisorClass qtilde;                // class of the strict conic transform
    std::vector<DivisorClass> etilde;   // classes of Etilde_1 ... Etilde_m
    std::vector<std::string> labels() const;  // "Qtilde", "Etilde_1", ...
    const DivisorClass& by_label(const std::string& label) const;
};

struct DualGraphVertex {
    std::string label;
    long self_intersection;
};

struct DualGraphEdge {
    int u, v;      // vertex indices
    long mult;     // intersection number (>= 1)
};

struct DualGraph {
    std::vector<DualGraphVertex> vertices;
    std::vector<DualGraphEdge> edges;

    bool is_tree() const;
    std::string to_dot() const;
};

struct HomaloidalClass {
    long degree = 0;
    std::vector<long> mults;
    DivisorClass cls;
};

// Lattice data (degree and base multiplicities) of a plane Cremona map.
struct NetData {
    long degree = 0;
    std::vector<long> mults;
};

TowerClasses strict_transform_classes(const ChartTower& t);

DualGraph dual_graph(const TowerClasses& classes);

// The expected tree for the family parameter n: a horizontal chain
// Qtilde - Etilde_5 - ... - Etilde_{4+2n} with the vertical chain
// Etilde_4 - ... - Etilde_1 attached at Etilde_{4+n}; brackets
// (-1, -(n+1), -1, rest -2).
DualGraph expected_dual_graph(int n);

// Checks the end-swap symmetry (Qtilde <-> Etilde_{4+2n}) of the graph.
bool has_end_swap_symmetry(const DualGraph& g, int n);

// Orders the contractions so every contracted class has self-intersection
// -1 at its turn; `keep` survives. Ties: Qtilde first, then low labels.
std::vector<std::string> contraction_sequence(const TowerClasses& classes,
                                              const std::string& keep);

// The unique primitive class with positive degree orthogonal to every
// contracted class, self-intersection 1 and canonical pairing -3.
HomaloidalClass homaloidal_class(const TowerClasses& classes,
                                 const std::vector<std::string>& contracted);

// (-1)-tower resolution predicate for a line or smooth conic.
bool is_minus_one_tower_resolution(const ChartTower& t, const MPoly& curve_equation);

// Degree of the image of a curve (degree, multiplicities at the map's
// base cluster) under a map with the given net data.
long image_degree(long curve_degree, const std::vector<long>& curve_mults,
                  const NetData& net);

// Lattice push-pull prediction for deg(phi' o f o phi^-1) applied to a
// generic line: d*2d - sum(m_i^2) = d^2 + 1.
long psi_degree_prediction(const NetData& phi_net);

} // namespace cremona
