#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cremona/linsys.hpp"
#include "cremona/textio.hpp"

using namespace cremona;

namespace {

std::vector<Rational> ones(int n) { return std::vector<Rational>(n, Rational(1)); }

std::vector<int> pad(std::vector<int> head, int len) {
    head.resize(len, 0);
    return head;
}

BaseConditions homaloidal_conditions(int n) {
    BaseConditions cond;
    cond.tower = build_tower(n, ones(n));
    TowerClasses cls = strict_transform_classes(cond.tower);
    auto contracted = contraction_sequence(cls, "Etilde_" + std::to_string(4 + 2 * n));
    HomaloidalClass h = homaloidal_class(cls, contracted);
    cond.degree = static_cast<int>(h.degree);
    for (long m : h.mults) cond.multiplicities.push_back(static_cast<int>(m));
    return cond;
}

} // namespace

TEST_CASE("small linear systems are the expected pencils") {
    ChartTower t = build_tower(2, ones(2));

    // Degree 2, multiplicities (1,1,1,1,1,0,...) -> the conic alone.
    BaseConditions conic_cond{2, t, pad({1, 1, 1, 1, 1}, 8)};
    LinearSystem sys = linear_system(conic_cond);
    REQUIRE(sys.dimension() == 1);
    CHECK(sys.basis[0] == standard_conic());

    // Degree 1, multiplicities (1,1,0,...) -> the tangent line x.
    BaseConditions line_cond{1, t, pad({1, 1}, 8)};
    LinearSystem lsys = linear_system(line_cond);
    REQUIRE(lsys.dimension() == 1);
    CHECK(lsys.basis[0] == MPoly::variable(plane_vars(), "x"));
}

TEST_CASE("homaloidal net has dimension 3 and 52 conditions at n=2") {
    BaseConditions cond = homaloidal_conditions(2);
    CHECK(cond.degree == 9);
    QMatrix m = condition_matrix(cond);
    CHECK(m.size() == 52);       // sum of m_i (m_i + 1) / 2
    CHECK(m[0].size() == 55);    // coefficients of a degree-9 form
    auto sol = solve_exact(m);
    CHECK(sol.free_dim == 3);    // 55 - 52 independent conditions

    LinearSystem sys = linear_system(cond);
    CHECK(sys.dimension() == 3);

    // Every member annihilates the condition matrix exactly; a generic
    // combination attains the assigned multiplicities (echelon members
    // may be unloaded, e.g. contain the conic as a component).
    std::vector<Exponents> monos;
    multiplicity_conditions(cond.degree, cond.tower, cond.multiplicities, &monos);
    for (const auto& f : sys.basis) {
        QVector coeffs(monos.size(), Rational(0));
        for (std::size_t j = 0; j < monos.size(); ++j) coeffs[j] = f.coeff(monos[j]);
        for (const auto& row : m) {
            Rational acc(0);
            for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * coeffs[j];
            CHECK(acc == 0);
        }
    }
    MPoly generic = sys.basis[0] + sys.basis[1].scaled(Rational(2)) +
                    sys.basis[2].scaled(Rational(4));
    auto nu = strict_multiplicities(generic, cond.tower);
    for (std::size_t i = 0; i < nu.size(); ++i) CHECK(nu[i] >= cond.multiplicities[i]);
}

TEST_CASE("net dimension is 3 for n = 1 and 2") {
    for (int n : {1, 2}) {
        LinearSystem sys = linear_system(homaloidal_conditions(n));
        CHECK(sys.dimension() == 3);
    }
}

TEST_CASE("cremona_from_net produces a birational map of the right degree") {
    LinearSystem sys = linear_system(homaloidal_conditions(1));
    RationalMap phi = cremona_from_net(sys);
    CHECK(phi.degree() == 5);

    // The conic-only pencil has dimension 1: structural error.
    ChartTower t = build_tower(2, ones(2));
    BaseConditions conic_cond{2, t, pad({1, 1, 1, 1, 1}, 8)};
    CHECK_THROWS_AS(cremona_from_net(linear_system(conic_cond)), StructuralError);
}

TEST_CASE("find_contracted_conic rejects automorphisms") {
    CHECK_THROWS_AS(find_contracted_conic(RationalMap::identity()), NoContractedConicError);
}

TEST_CASE("normalize_to_Q yields conic purity (n=1)") {
    LinearSystem sys = linear_system(homaloidal_conditions(1));
    RationalMap raw = cremona_from_net(sys);
    RationalMap phi = normalize_to_Q(raw);
    CHECK(phi.degree() == 5);

    // The contracted conic of the normalized map is Q itself.
    PlaneCurve back = find_contracted_conic(phi);
    CHECK(back.equation == standard_conic());

    // pullback(phi, Q) = c * (xz - y^2)^5.
    MPoly pb = pullback(phi, PlaneCurve(standard_conic()));
    MPoly conic = standard_conic();
    for (int i = 0; i < 5; ++i) {
        auto q = pb.divide_exact(conic);
        REQUIRE(q.has_value());
        pb = *q;
    }
    CHECK(pb.is_constant());
    CHECK(pb.constant_value() != 0);

    // jacobian(phi) = c * (xz - y^2)^6.
    MPoly jac = jacobian(phi);
    for (int i = 0; i < 6; ++i) {
        auto q = jac.divide_exact(conic);
        REQUIRE(q.has_value());
        jac = *q;
    }
    CHECK(jac.is_constant());

    // Idempotence: normalizing again changes nothing (up to scale).
    RationalMap again = normalize_to_Q(phi);
    MPoly cross = again.coord(0) * phi.coord(1) - again.coord(1) * phi.coord(0);
    CHECK(cross.is_zero());

    // The image of the contracted conic lies on Q.
    ProjPoint q1 = contracted_conic_image(phi);
    CHECK(PlaneCurve(standard_conic()).contains(q1));

    // 10 samples on the conic map to the same point.
    CurveParam qp = conic_param();
    for (int t10 = 1; t10 <= 10; ++t10)
        CHECK(apply_map(phi, qp.at(Rational(t10), Rational(1))) == q1);
}

TEST_CASE("empty systems report dimension zero") {
    // No line passes through three points following the conic.
    ChartTower t = build_tower(1, ones(1));
    BaseConditions cond{1, t, pad({1, 1, 1}, 6)};
    QMatrix m = condition_matrix(cond);
    auto sol = solve_exact(m);
    CHECK(sol.free_dim == 0);
}

TEST_CASE("condition matrix exports as exact CSV") {
    ChartTower t = build_tower(1, ones(1));
    BaseConditions cond{1, t, pad({1, 1}, 6)};
    QMatrix m = condition_matrix(cond);
    std::string csv = matrix_to_csv(m);
    CHECK(csv.find(',') != std::string::npos);
    CHECK(m.size() == 2);
}

TEST_CASE("linear system serializes as text lines and an n=1 lambda*mu=1 run degenerates gracefully") {
    ChartTower t = build_tower(2, ones(2));
    BaseConditions conic_cond{2, t, pad({1, 1, 1, 1, 1}, 8)};
    LinearSystem sys = linear_system(conic_cond);
    auto lines = system_text_lines(sys);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0] == "1 x^1 y^0 z^1 - 1 x^0 y^2 z^0");
}
