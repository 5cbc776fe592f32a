#include <doctest.h>

#include <cmath>
#include <random>

#include "swingnet/stability.hpp"
#include "test_helpers.hpp"

using namespace swingnet;
using swingnet::testing::five_node_grid;
using swingnet::testing::random_connected_grid;
using swingnet::testing::two_node_grid;

namespace {

// the unstable post-attack branch of the five-node grid, reconstructed from
// the published pole table (see data/fig1a.grid)
Vector table_branch_guess() {
    Vector v(5);
    v << 0.0, 2.6635, -0.3118, 0.0, 0.4781;
    return v;
}

}  // namespace

TEST_CASE("hessian of the two-node grid at equilibrium") {
    GridTopology g = two_node_grid();
    Equilibrium eq = solve_equilibrium(g);
    REQUIRE(eq.converged);
    Matrix H = hessian(g, eq);
    double s3 = std::sqrt(3.0);
    CHECK(H(0, 0) == doctest::Approx(s3));
    CHECK(H(0, 1) == doctest::Approx(-s3));
    CHECK(H.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
    CHECK((H - H.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-node spectrum is {0, 2 sqrt(3)} and asymptotically stable") {
    GridTopology g = two_node_grid();
    Equilibrium eq = solve_equilibrium(g);
    REQUIRE(eq.converged);
    StabilityReport rep = classify_stability(hessian(g, eq));
    REQUIRE(rep.eigen_real_parts.size() == 2);
    CHECK(std::abs(rep.eigen_real_parts[0]) < 1e-10);
    CHECK(rep.eigen_real_parts[1] == doctest::Approx(2 * std::sqrt(3.0)));
    CHECK(rep.structural_zero_index == 0);
    CHECK(rep.lambda2 == doctest::Approx(2 * std::sqrt(3.0)));
    CHECK(rep.verdict == StabilityVerdict::AsymptoticallyStable);
}

TEST_CASE("post-attack five-node grid is unstable on the published branch") {
    GridTopology g = remove_edge(five_node_grid(), 2, 3);
    Equilibrium eq = solve_equilibrium(g, table_branch_guess());
    REQUIRE(eq.converged);
    StabilityReport rep = classify_stability(hessian(g, eq));
    CHECK(rep.verdict == StabilityVerdict::Unstable);
    CHECK(rep.lambda2 < -1e-3);
}

TEST_CASE("zero matrix classifies as marginally stable") {
    StabilityReport rep = classify_stability(Matrix::Zero(4, 4));
    CHECK(rep.verdict == StabilityVerdict::MarginallyStable);
    CHECK(rep.lambda2 == 0.0);
}

TEST_CASE("H annihilates the ones vector at converged equilibria") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        GridTopology g = random_connected_grid(rng, 5 + trial % 6, 3);
        Equilibrium eq = solve_equilibrium(g);
        REQUIRE(eq.converged);
        Matrix H = hessian(g, eq);
        Vector ones = Vector::Ones(H.rows());
        CHECK((H * ones).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("small phase differences imply asymptotic stability") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        GridTopology g = random_connected_grid(rng, 6, 4);
        Equilibrium eq = solve_equilibrium(g);
        REQUIRE(eq.converged);
        double max_diff = 0.0;
        for (const auto& e : g.edges())
            max_diff = std::max(max_diff, std::abs(eq.phases[g.index_of(e.a)] -
                                                   eq.phases[g.index_of(e.b)]));
        REQUIRE(max_diff < M_PI / 2);  // the fixture keeps loads light
        CHECK(classify_stability(hessian(g, eq)).verdict ==
              StabilityVerdict::AsymptoticallyStable);
    }
}

TEST_CASE("classification agrees between H and its transpose") {
    std::mt19937_64 rng(41);
    GridTopology g = random_connected_grid(rng, 7, 4);
    Equilibrium eq = solve_equilibrium(g);
    REQUIRE(eq.converged);
    Matrix H = hessian(g, eq);
    CHECK(classify_stability(H).verdict == classify_stability(H.transpose()).verdict);
}

TEST_CASE("structural zero is found even when lambda2 is negative") {
    GridTopology g = remove_edge(five_node_grid(), 2, 3);
    Equilibrium eq = solve_equilibrium(g, table_branch_guess());
    REQUIRE(eq.converged);
    StabilityReport rep = classify_stability(hessian(g, eq));
    // the smallest eigenvalue is the unstable one, not the structural zero
    CHECK(rep.structural_zero_index != 0);
    CHECK(std::abs(rep.eigen_real_parts[rep.structural_zero_index]) < 1e-9);
}

TEST_CASE("non-symmetric matrices go through the general eigensolver") {
    Matrix A(3, 3);
    A << 2.0, 1.0, 0.0,
         0.0, 2.0, 0.5,
         0.0, 0.0, -1.0;  // eigenvalues 2, 2, -1
    StabilityReport rep = classify_stability(A);
    REQUIRE(rep.eigen_real_parts.size() == 3);
    CHECK(rep.eigen_real_parts[0] == doctest::Approx(-1.0));
    CHECK(rep.eigen_real_parts[2] == doctest::Approx(2.0));
    CHECK(rep.verdict == StabilityVerdict::Unstable);  // -1 is not the ones mode
}
