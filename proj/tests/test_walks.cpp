#include "oracles.hpp"
#include "qwl/random.hpp"
#include "qwl/walks.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace qwl;
using qwl::test::thrown_kind;

namespace {

const Complex I1{0.0, 1.0};

CMatrix matrix_power(const CMatrix& a, int k) {
  CMatrix out = identity(a.rows());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

// Least r with a^r = I by repeated multiplication.
int brute_force_order(const CMatrix& a) {
  CMatrix p = a;
  for (int r = 1; r < 1000; ++r) {
    if (distance(p, identity(a.rows())) == 0.0) return r;
    p = p * a;
  }
  return -1;
}

CVector basis_vector(int dim, int i) {
  CVector e = CVector::Zero(dim);
  e(i) = 1.0;
  return e;
}

std::vector<CoinedWalk> shipped_walks() {
  std::vector<CoinedWalk> walks;
  for (int n = 3; n <= 8; ++n) walks.push_back(cycle_walk(n));
  walks.push_back(lattice_walk(3, 2));
  walks.push_back(example_walk());
  return walks;
}

CMatrix k4_swap(int a, int b, int c, int d) {
  CMatrix s = CMatrix::Zero(4, 4);
  s(b, a) = s(a, b) = 1.0;
  s(d, c) = s(c, d) = 1.0;
  return s;
}

}  // namespace

TEST_CASE("circulant_shift examples") {
  const CMatrix f3 = circulant_shift(3);
  CHECK(f3(0, 2) == Complex(1.0));
  CHECK(f3.row(0).sum() == Complex(1.0));
  CHECK(f3 * basis_vector(3, 0) == basis_vector(3, 1));
  CHECK(matrix_power(circulant_shift(5), 5) == identity(5));
  const CMatrix f6 = circulant_shift(6);
  CHECK(f6 + f6.transpose() == adjacency(cycle_graph(6)));
  CHECK(thrown_kind([] { circulant_shift(1); }) == ErrorKind::TooSmall);
}

TEST_CASE("cycle_walk examples") {
  const CoinedWalk w4 = cycle_walk(4);
  CHECK(w4.coin_dim() == 2);
  CHECK(w4.walker_dim() == 4);
  // |coin0, 3> -> |coin0, 0>
  CHECK(shift_matrix(w4) * basis_vector(8, 3) == basis_vector(8, 0));
  const CMatrix f5 = test::forward_shift(5);
  CHECK(shift_matrix(cycle_walk(5)) == test::block_diag(f5, f5.transpose()));
  CHECK(shift_order(cycle_walk(8)) == 8);
  CHECK(thrown_kind([] { cycle_walk(2); }) == ErrorKind::TooSmall);
  CHECK(is_cycle_walk(cycle_walk(6)));
  CHECK_FALSE(is_cycle_walk(example_walk()));
  CHECK_FALSE(is_cycle_walk(lattice_walk(3, 2)));
}

TEST_CASE("lattice_walk examples") {
  CHECK(lattice_walk(5, 1) == cycle_walk(5));
  const CoinedWalk w = lattice_walk(3, 2);
  CHECK(w.coin_dim() == 4);
  CHECK(w.walker_dim() == 9);
  const CMatrix s = shift_matrix(w);
  CHECK(s.rows() == 36);
  // Second coordinate: coins 2 (forward) and 3 (backward) move (j1, j2) -> (j1, j2 +- 1).
  // First coordinate: coins 0 and 1 move (j1, j2) -> (j1 +- 1, j2).
  for (int j1 = 0; j1 < 3; ++j1)
    for (int j2 = 0; j2 < 3; ++j2) {
      const int j = 3 * j1 + j2;
      CHECK(w.moves()[0][j] == 3 * ((j1 + 1) % 3) + j2);
      CHECK(w.moves()[1][j] == 3 * ((j1 + 2) % 3) + j2);
      CHECK(w.moves()[2][j] == 3 * j1 + (j2 + 1) % 3);
      CHECK(w.moves()[3][j] == 3 * j1 + (j2 + 2) % 3);
    }
  // Block form: coin pair for coordinate l is diag(F^(l), F^(l)T).
  const CMatrix f = test::forward_shift(3);
  const CMatrix f_first = test::loop_kron(f, identity(3));
  const CMatrix f_second = test::loop_kron(identity(3), f);
  const CMatrix expected = test::block_diag(test::block_diag(f_first, f_first.transpose()),
                                            test::block_diag(f_second, f_second.transpose()));
  CHECK(s == expected);
  CHECK(shift_order(lattice_walk(4, 2)) == 4);
  CHECK(shift_order(lattice_walk(3, 2)) == 3);
  CHECK(thrown_kind([] { lattice_walk(2, 2); }) == ErrorKind::TooSmall);
  CHECK(thrown_kind([] { lattice_walk(3, 0); }) == ErrorKind::TooSmall);
}

TEST_CASE("graph_coined_walk validation") {
  CHECK(graph_coined_walk(cycle_graph(5), {{1, 2, 3, 4, 0}, {4, 0, 1, 2, 3}}) == cycle_walk(5));
  CHECK(thrown_kind([] { graph_coined_walk(cycle_graph(4), {{1, 1, 3, 0}, {3, 0, 1, 2}}); }) ==
        ErrorKind::NotBijective);
  CHECK(thrown_kind([] { graph_coined_walk(cycle_graph(4), {{2, 3, 0, 1}, {3, 0, 1, 2}}); }) ==
        ErrorKind::NotAnEdge);
  CHECK(thrown_kind([] { graph_coined_walk(Graph(3, {{0, 1}, {1, 2}}), {{1, 0, 1}, {1, 2, 1}}); }) ==
        ErrorKind::NotRegular);
  CHECK(thrown_kind([] { graph_coined_walk(cycle_graph(4), {{1, 2, 3, 0}}); }) == ErrorKind::DimMismatch);
  CHECK(thrown_kind([] { graph_coined_walk(cycle_graph(4), {{1, 2, 3, 0}, {3, 0, 1}}); }) ==
        ErrorKind::DimMismatch);
}

TEST_CASE("example_walk structure") {
  const CoinedWalk w = example_walk();
  CHECK(w.coin_dim() == 3);
  CHECK(w.walker_dim() == 4);
  CHECK(shift_order(w) == 2);
  const CMatrix s1 = k4_swap(0, 2, 1, 3), s2 = k4_swap(0, 1, 2, 3), s3 = k4_swap(0, 3, 1, 2);
  CHECK(shift_matrix(w) == test::block_diag(test::block_diag(s1, s2), s3));
  CHECK(s1 * s2 == s3);
  const auto spectrum = test::general_eigenvalues_real(adjacency(w.graph()));
  const double expected[4] = {-1.0, -1.0, -1.0, 3.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(spectrum[i] - expected[i]) <= 1e-12);
}

TEST_CASE("shift matrices are permutations of the computed order") {
  for (const CoinedWalk& w : shipped_walks()) {
    const CMatrix s = shift_matrix(w);
    CHECK(is_permutation(s, 0.0));
    CHECK(matrix_power(s, static_cast<int>(shift_order(w))) == identity(w.dim()));
    CHECK(brute_force_order(s) == shift_order(w));
    for (int k = 0; k < w.coin_dim(); ++k)
      for (int j = 0; j < w.walker_dim(); ++j)
        CHECK(s * basis_vector(w.dim(), k * w.walker_dim() + j) ==
              basis_vector(w.dim(), k * w.walker_dim() + w.moves()[k][j]));
  }
}

TEST_CASE("step_operator") {
  const CoinedWalk w4 = cycle_walk(4);
  CHECK(step_operator(w4, identity(2)) == shift_matrix(w4));
  CMatrix r(2, 2);
  r << 0.0, -I1, -I1, 0.0;
  const CMatrix u = step_operator(w4, r);
  CHECK(distance(u * u, -identity(8)) <= 1e-15);

  LcgStream rng(21);
  for (const CoinedWalk& w : shipped_walks()) {
    const CMatrix coin = random_unitary(w.coin_dim(), rng);
    const CMatrix step = step_operator(w, coin);
    CHECK(distance(step, shift_matrix(w) * test::loop_kron(coin, identity(w.walker_dim()))) <= 1e-15);
    CHECK(unitary_residual(step) <= 1e-12 * w.dim());
  }
  CHECK(thrown_kind([&] { step_operator(w4, 2.0 * identity(2)); }) == ErrorKind::NotUnitary);
  CHECK(thrown_kind([&] { step_operator(w4, identity(3)); }) == ErrorKind::DimMismatch);
}

TEST_CASE("edge walk matrices follow their defining actions") {
  LcgStream rng(22);
  for (const CoinedWalk& w : shipped_walks()) {
    const CMatrix coin = random_unitary(w.coin_dim(), rng);
    const EdgeWalk e = coined_to_edge_walk(w, coin);
    const int n = w.walker_dim(), c = w.coin_dim(), dim = w.dim();
    REQUIRE(static_cast<int>(e.edge_basis.size()) == dim);
    CHECK(std::is_sorted(e.edge_basis.begin(), e.edge_basis.end()));
    CHECK(is_permutation(e.chi, 0.0));
    CHECK(is_permutation(e.w_matrix, 0.0));
    CHECK(unitary_residual(e.coin_blocks) <= 1e-12 * dim);

    auto edge_index = [&](int a, int b) {
      const auto it = std::find(e.edge_basis.begin(), e.edge_basis.end(), Edge{a, b});
      REQUIRE(it != e.edge_basis.end());
      return static_cast<int>(it - e.edge_basis.begin());
    };
    for (int k = 0; k < c; ++k)
      for (int j = 0; j < n; ++j) {
        const int next = w.moves()[k][j];
        CHECK(w.graph().has_edge(j, next));
        const int col = edge_index(j, next);
        CHECK(e.chi * basis_vector(dim, k * n + j) == basis_vector(dim, col));
        CHECK(e.w_matrix * basis_vector(dim, col) == basis_vector(dim, edge_index(next, w.moves()[k][next])));
        // Coin blocks act only within the present-vertex group of j.
        CVector expected = CVector::Zero(dim);
        for (int l = 0; l < c; ++l) expected(edge_index(j, w.moves()[l][j])) = coin(l, k);
        CHECK((e.coin_blocks * basis_vector(dim, col) - expected).norm() == 0.0);
      }

    const CMatrix lhs = e.chi * shift_matrix(w) * test::loop_kron(coin, identity(n));
    const CMatrix rhs = e.w_matrix * e.coin_blocks * e.chi;
    CHECK(distance(lhs, rhs) <= 1e-12 * dim);
  }
}

TEST_CASE("intertwining identity") {
  CHECK(intertwining_residual(cycle_walk(3), identity(2)) == 0.0);
  CMatrix hadamard(2, 2);
  hadamard << 1.0, 1.0, 1.0, -1.0;
  hadamard /= std::sqrt(2.0);
  CHECK(intertwining_residual(cycle_walk(5), hadamard) <= 1e-12);
  CHECK(intertwining_residual(cycle_walk(5), identity(2)) <= 1e-14);
  CHECK(intertwining_residual(example_walk(), identity(3)) <= 1e-14);

  LcgStream rng(23);
  for (const CoinedWalk& w : shipped_walks())
    for (int trial = 0; trial < 20; ++trial)
      CHECK(intertwining_residual(w, random_unitary(w.coin_dim(), rng)) <= 1e-12 * w.dim());

  // Cycle of length 3 with a coin that doubles back: both coins move 0 -> 1.
  const CoinedWalk collide = graph_coined_walk(cycle_graph(3), {{1, 2, 0}, {1, 2, 0}});
  CHECK(thrown_kind([&] { coined_to_edge_walk(collide, identity(2)); }) == ErrorKind::EdgeCollision);
}

TEST_CASE("ctqw_propagator") {
  const CMatrix a = adjacency(cycle_graph(5));
  CHECK(distance(ctqw_propagator(a, 1.3, 0.0), identity(5)) <= 1e-14);
  CHECK(distance(ctqw_propagator(a, 0.8, 1.5), test::taylor_expm(-I1 * 0.8 * 1.5 * a)) <= 1e-10);

  const CMatrix single = adjacency(cycle_graph(3));
  const CMatrix lattice = adjacency(lattice_graph(3, 2));
  for (double t : {0.3, 1.0, 2.5}) {
    const CMatrix x1 = ctqw_propagator(single, 1.0, t);
    const CMatrix factored = test::loop_kron(x1, identity(3)) * test::loop_kron(identity(3), x1);
    CHECK(distance(ctqw_propagator(lattice, 1.0, t), factored) <= 1e-9);
  }

  // Laplacian = A - 2d I on a d-lattice, so the propagators differ by e^{2 i d gamma t}.
  for (int d : {1, 2}) {
    const Graph g = lattice_graph(4, d);
    const double gamma = 0.7, t = 1.9;
    const CMatrix via_l = ctqw_propagator(laplacian(g), gamma, t);
    const CMatrix via_a = ctqw_propagator(adjacency(g), gamma, t);
    CHECK(distance(via_l, std::exp(2.0 * I1 * static_cast<double>(d) * gamma * t) * via_a) <= 1e-10);
  }

  LcgStream rng(24);
  const CVector psi = random_state(9, rng);
  CHECK((ctqw_propagator(lattice, 1.0, 3.0) * psi).norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ctrw_propagator") {
  const CMatrix l3 = laplacian(cycle_graph(3));
  CHECK(distance(ctrw_propagator(l3, 1.0, 0.0), identity(3)) <= 1e-14);
  const CMatrix limit = ctrw_propagator(l3, 1.0, 20.0);
  CHECK((limit.real().array() - 1.0 / 3.0).abs().maxCoeff() <= 1e-6);

  for (const Graph& g : {cycle_graph(6), lattice_graph(3, 2), example_graph()}) {
    const CMatrix l = laplacian(g);
    for (double gt : {0.1, 1.0, 10.0, 50.0}) {
      const CMatrix p = ctrw_propagator(l, 1.0, gt);
      CHECK((p.real().colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-10);
      CHECK(p.real().minCoeff() >= -1e-12);
      CHECK(p.imag().norm() == 0.0);
    }
    CHECK(distance(ctrw_propagator(l, 0.5, 1.2), test::taylor_expm(0.6 * l)) <= 1e-10);
  }

  CHECK(thrown_kind([] { ctrw_propagator(adjacency(cycle_graph(4)), 1.0, 1.0); }) == ErrorKind::NotLaplacian);
  CMatrix nonsym = laplacian(cycle_graph(3));
  nonsym(0, 1) = 2.0;
  nonsym(0, 0) = -3.0;
  CHECK(thrown_kind([&] { ctrw_propagator(nonsym, 1.0, 1.0); }) == ErrorKind::NotLaplacian);
  CHECK(thrown_kind([&] { ctrw_propagator(l3, 1.0, -1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("dtrw_step") {
  const CMatrix l4 = laplacian(cycle_graph(4));
  RealState p = RealState::Zero(4);
  p(0) = 1.0;
  CHECK(dtrw_step(p, l4, 1.0, 0.0) == p);
  const RealState next = dtrw_step(p, l4, 1.0, 0.1);
  const double expected[4] = {0.8, 0.1, 0.0, 0.1};
  for (int j = 0; j < 4; ++j) CHECK(next(j) == doctest::Approx(expected[j]).epsilon(1e-15));
  CHECK(next.sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(thrown_kind([&] { dtrw_step(p, l4, 1.0, 0.6); }) == ErrorKind::Unstable);
  CHECK_FALSE(thrown_kind([&] { dtrw_step(p, l4, 1.0, 0.5); }).has_value());
  CHECK(thrown_kind([&] { dtrw_step(RealState::Zero(3), l4, 1.0, 0.1); }) == ErrorKind::DimMismatch);
}

TEST_CASE("dtrw composition converges to ctrw at first order") {
  const CMatrix l = laplacian(cycle_graph(6));
  RealState p0 = RealState::Zero(6);
  p0(0) = 1.0;
  const RealState target = test::taylor_expm(l).real() * p0;
  std::vector<double> errors;
  for (int k : {250, 500, 1000}) {
    RealState p = p0;
    for (int s = 0; s < k; ++s) p = dtrw_step(p, l, 1.0, 1.0 / k);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.minCoeff() >= 0.0);
    errors.push_back((p - target).norm());
  }
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double ratio = errors[i] / errors[i - 1];
    CHECK(ratio >= 0.4);
    CHECK(ratio <= 0.6);
  }
}
