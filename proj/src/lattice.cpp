#include "cremona/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "cremona/errors.hpp"

namespace cremona {

long DivisorClass::intersect(const DivisorClass& o) const {
    if (coeffs.size() != o.coeffs.size())
        throw Error("DivisorClass: rank mismatch");
    long s = coeffs[0] * o.coeffs[0];
    for (std::size_t i = 1; i < coeffs.size(); ++i) s -= coeffs[i] * o.coeffs[i];
    return s;
}

std::vector<std::string> TowerClasses::labels() const {
    std::vector<std::string> out = {"Qtilde"};
    for (int i = 1; i <= m; ++i) out.push_back("Etilde_" + std::to_string(i));
    return out;
}

const DivisorClass& TowerClasses::by_label(const std::string& label) const {
    if (label == "Qtilde") return qtilde;
    if (label.rfind("Etilde_", 0) == 0) {
        int i = std::stoi(label.substr(7));
        if (i >= 1 && i <= m) return etilde[i - 1];
    }
    throw Error("unknown curve label '" + label + "'");
}

TowerClasses strict_transform_classes(const ChartTower& t) {
    TowerClasses out;
    out.n = t.n;
    out.m = t.length();
    const auto& pv = plane_vars();
    MPoly conic = MPoly::variable(pv, "x") * MPoly::variable(pv, "z") -
                  MPoly::variable(pv, "y") * MPoly::variable(pv, "y");
    auto nu = strict_multiplicities(conic, t);

    out.qtilde.coeffs.assign(out.m + 1, 0);
    out.qtilde.coeffs[0] = 2;
    for (int i = 0; i < out.m; ++i) out.qtilde.coeffs[i + 1] = -nu[i];

    auto prox = proximity_table(t);
    out.etilde.resize(out.m);
    for (int i = 0; i < out.m; ++i) {
        auto& c = out.etilde[i].coeffs;
        c.assign(out.m + 1, 0);
        c[i + 1] = 1;
        for (int j = i + 1; j < out.m; ++j)
            if (prox[j][i]) c[j + 1] = -1;
    }
    return out;
}

DualGraph dual_graph(const TowerClasses& classes) {
    DualGraph g;
    auto labels = classes.labels();
    std::vector<const DivisorClass*> cs = {&classes.qtilde};
    for (const auto& e : classes.etilde) cs.push_back(&e);
    for (std::size_t i = 0; i < cs.size(); ++i)
        g.vertices.push_back({labels[i], cs[i]->self_intersection()});
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            long m = cs[i]->intersect(*cs[j]);
            if (m >= 1)
                g.edges.push_back({static_cast<int>(i), static_cast<int>(j), m});
        }
    return g;
}

DualGraph expected_dual_graph(int n) {
    DualGraph g;
    const int m = 4 + 2 * n;
    g.vertices.push_back({"Qtilde", -1});
    for (int i = 1; i <= m; ++i) {
        long si = -2;
        if (i == 4) si = -(n + 1);
        if (i == m) si = -1;
        g.vertices.push_back({"Etilde_" + std::to_string(i), si});
    }
    auto idx = [&](const std::string& l) {
        if (l == "Qtilde") return 0;
        return std::stoi(l.substr(7));
    };
    auto edge = [&](const std::string& a, const std::string& b) {
        int u = idx(a), v = idx(b);
        if (u > v) std::swap(u, v);
        g.edges.push_back({u, v, 1});
    };
    // Vertical chain Etilde_1 - ... - Etilde_4, attached at Etilde_{4+n}.
    for (int i = 1; i <= 3; ++i)
        edge("Etilde_" + std::to_string(i), "Etilde_" + std::to_string(i + 1));
    edge("Etilde_4", "Etilde_" + std::to_string(4 + n));
    // Horizontal chain Qtilde - Etilde_5 - ... - Etilde_{4+2n}.
    edge("Qtilde", "Etilde_5");
    for (int i = 5; i < m; ++i)
        edge("Etilde_" + std::to_string(i), "Etilde_" + std::to_string(i + 1));
    std::sort(g.edges.begin(), g.edges.end(), [](const DualGraphEdge& a, const DualGraphEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return g;
}

bool DualGraph::is_tree() const {
    // Connected with |E| = |V| - 1.
    if (edges.size() + 1 != vertices.size()) return false;
    std::vector<int> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    int comps = static_cast<int>(vertices.size());
    for (const auto& e : edges) {
        int a = find(e.u), b = find(e.v);
        if (a == b) return false;
        parent[a] = b;
        --comps;
    }
    return comps == 1;
}

std::string DualGraph::to_dot() const {
    std::ostringstream os;
    os << "graph dual_graph {\n";
    std::vector<std::string> ids(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        std::string id = vertices[i].label;
        std::transform(id.begin(), id.end(), id.begin(), ::tolower);
        ids[i] = id;
        os << "  " << id << " [label=\"" << vertices[i].label << " ["
           << vertices[i].self_intersection << "]\"];\n";
    }
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end(), [](const DualGraphEdge& a, const DualGraphEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (const auto& e : sorted) {
        os << "  " << ids[e.u] << " -- " << ids[e.v];
        if (e.mult != 1) os << " [label=\"" << e.mult << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

bool has_end_swap_symmetry(const DualGraph& g, int n) {
    const int m = 4 + 2 * n;
    // sigma: Qtilde <-> Etilde_m, Etilde_{4+i} <-> Etilde_{4+2n-i} for
    // i = 1..n-1, everything else fixed.
    auto map_label = [&](const std::string& l) -> std::string {
        if (l == "Qtilde") return "Etilde_" + std::to_string(m);
        int i = std::stoi(l.substr(7));
        if (i == m) return "Qtilde";
        if (i >= 5 && i <= m - 1) {
            int j = 4 + 2 * n - (i - 4);  // reflect along the horizontal chain
            if (j == m) return "Qtilde";
            return "Etilde_" + std::to_string(j);
        }
        return l;
    };
    std::map<std::string, long> self;
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        self[g.vertices[i].label] = g.vertices[i].self_intersection;
        index[g.vertices[i].label] = static_cast<int>(i);
    }
    for (const auto& [l, s] : self)
        if (self.at(map_label(l)) != s) return false;
    std::vector<std::pair<int, int>> orig, mapped;
    for (const auto& e : g.edges) {
        orig.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
        int u2 = index.at(map_label(g.vertices[e.u].label));
        int v2 = index.at(map_label(g.vertices[e.v].label));
        mapped.push_back({std::min(u2, v2), std::max(u2, v2)});
    }
    std::sort(orig.begin(), orig.end());
    std::sort(mapped.begin(), mapped.end());
    return orig == mapped;
}

std::vector<std::string> contraction_sequence(const TowerClasses& classes,
                                              const std::string& keep) {
    auto labels = classes.labels();
    std::vector<DivisorClass> cs = {classes.qtilde};
    for (const auto& e : classes.etilde) cs.push_back(e);
    std::vector<bool> alive(cs.size(), true);
    int keep_idx = -1;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == keep) keep_idx = static_cast<int>(i);
    if (keep_idx < 0) throw Error("contraction_sequence: unknown keep label");

    std::vector<std::string> order;
    for (std::size_t round = 0; round + 1 < cs.size(); ++round) {
        int pick = -1;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (!alive[i] || static_cast<int>(i) == keep_idx) continue;
            if (cs[i].self_intersection() == -1) { pick = static_cast<int>(i); break; }
        }
        if (pick < 0)
            throw NoSequenceError("contraction_sequence: no (-1)-class available (" +
                                  std::to_string(order.size()) + " done)");
        // Blow down: every class gains (Y.X) X.
        DivisorClass x = cs[pick];
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (!alive[i] || static_cast<int>(i) == pick) continue;
            long inc = cs[i].intersect(x);
            if (inc == 0) continue;
            for (std::size_t k = 0; k < cs[i].coeffs.size(); ++k)
                cs[i].coeffs[k] += inc * x.coeffs[k];
        }
        alive[pick] = false;
        order.push_back(labels[pick]);
    }
    return order;
}

HomaloidalClass homaloidal_class(const TowerClasses& classes,
                                 const std::vector<std::string>& contracted) {
    const int rank = classes.m + 1;
    QMatrix rows;
    for (const auto& label : contracted) {
        const DivisorClass& c = classes.by_label(label);
        QVector row(rank);
        row[0] = Rational(c.coeffs[0]);
        for (int k = 1; k < rank; ++k) row[k] = Rational(-c.coeffs[k]);
        rows.push_back(std::move(row));
    }
    auto sol = solve_exact(rows);
    if (sol.basis.size() != 1)
        throw StructuralError("homaloidal_class: orthogonal space has dimension " +
                              std::to_string(sol.basis.size()));
    // Scale to a primitive integer vector with positive degree.
    Integer den(1);
    for (const auto& q : sol.basis[0])
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> v;
    Integer g(0);
    for (const auto& q : sol.basis[0]) {
        Rational s = q * Rational(den);
        v.push_back(s.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.back().get_mpz_t());
    }
    if (g == 0) throw StructuralError("homaloidal_class: zero solution");
    HomaloidalClass h;
    h.cls.coeffs.resize(rank);
    for (int i = 0; i < rank; ++i) {
        Integer t = v[i] / g;
        h.cls.coeffs[i] = t.get_si();
    }
    if (h.cls.coeffs[0] < 0)
        for (auto& c : h.cls.coeffs) c = -c;
    if (h.cls.coeffs[0] <= 0)
        throw StructuralError("homaloidal_class: nonpositive degree");
    // Basis coefficients are (d, -m_1, ..., -m_m).
    h.degree = h.cls.coeffs[0];
    h.mults.clear();
    for (std::size_t i = 1; i < h.cls.coeffs.size(); ++i)
        h.mults.push_back(-h.cls.coeffs[i]);

    if (h.cls.self_intersection() != 1)
        throw StructuralError("homaloidal_class: self-intersection != 1");
    long sum = std::accumulate(h.mults.begin(), h.mults.end(), 0L);
    if (sum != 3 * h.degree - 3)
        throw StructuralError("homaloidal_class: canonical pairing != -3");
    return h;
}

bool is_minus_one_tower_resolution(const ChartTower& t, const MPoly& curve_equation) {
    int deg = 0;
    if (!curve_equation.is_homogeneous(&deg) || deg < 1 || deg > 2)
        return false;  // predicate implemented for lines and conics
    if (deg == 2) {
        // Smoothness of the conic: nonsingular symmetric matrix.
        const auto& vars = curve_equation.vars();
        auto c = [&](int i, int j, int k) {
            return curve_equation.coeff({i, j, k});
        };
        QMatrix s = {{c(2, 0, 0) * 2, c(1, 1, 0), c(1, 0, 1)},
                     {c(1, 1, 0), c(0, 2, 0) * 2, c(0, 1, 1)},
                     {c(1, 0, 1), c(0, 1, 1), c(0, 0, 2) * 2}};
        (void)vars;
        if (det(s) == 0) return false;
    }
    auto nu = strict_multiplicities(curve_equation, t);
    long self = static_cast<long>(deg) * deg;
    for (int v : nu) {
        if (v > 1) return false;  // strict transform would turn singular
        self -= static_cast<long>(v) * v;
    }
    return self == -1;
}

long image_degree(long curve_degree, const std::vector<long>& curve_mults,
                  const NetData& net) {
    if (curve_mults.size() != net.mults.size())
        throw Error("image_degree: multiplicity vector mismatch");
    long d = net.degree * curve_degree;
    for (std::size_t i = 0; i < net.mults.size(); ++i)
        d -= net.mults[i] * curve_mults[i];
    if (d < 0) throw StructuralError("image_degree: negative degree");
    return d;
}

long psi_degree_prediction(const NetData& phi_net) {
    // line --phi^-1--> net member (deg d, mults m_i)
    //      --f-------> degree 2d, mults preserved at the carried cluster
    //      --phi'----> d * 2d - sum m_i^2
    long d = phi_net.degree;
    long s = 0;
    for (long m : phi_net.mults) s += m * m;
    return d * 2 * d - s;
}

} // namespace cremona
