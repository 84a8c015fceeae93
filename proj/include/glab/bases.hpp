#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "glab/seqcore.hpp"
#include "glab/spaces.hpp"
#include "glab/weights.hpp"

namespace glab {

// Element of a (possibly paired) ambient space; y stays empty for scalar
// ambients.
struct Vec2 {
  SparseVec x, y;
};

// An extremal vector recorded by a construction, with the set the proof
// projects onto and the bound it certifies.
struct WitnessRecord {
  std::string label;
  SparseVec coeffs;
  IndexSet marked;       // distinguished set, subset of the support
  double expected = 0;   // expected ratio or bound
  std::string note;
};

// Synthesis plus explicit dual-functional evaluation over a finite window of
// coefficient indices.
struct Basis {
  std::string label;
  Index window = 0;
  bool pair_ambient = false;
  Space space;       // used when !pair_ambient
  PairSpace pspace;  // used when pair_ambient
  bool unit_vectors = false;  // synthesis is the identity on coordinates
  std::function<Vec2(const SparseVec&)> synth;
  std::function<SparseVec(const Vec2&)> dual_eval;
  // When set: the exact common value of the upper/lower super-democracy
  // functions at m (symmetric unit-vector systems and the one construction
  // with a proven exact indicator norm).
  std::function<double(Index)> phi_exact;
  std::function<double(Index)> dual_phi_exact;
  std::vector<WitnessRecord> witnesses;  // registered extremal candidates

  double norm(const Vec2& v) const {
    return pair_ambient ? summax_norm(v.x, v.y, pspace) : space.norm(v.x);
  }
  void check_window(Index n) const {
    if (n > window)
      throw input_error("basis '" + label + "' materialized only up to index " +
                        std::to_string(window));
  }
};

// ---------------------------------------------------------------------------
// Interval-table construction: a monotone Schauder basis whose norm is the
// max of l_p and a bracketed-partial-sum seminorm over consecutive blocks.
// ---------------------------------------------------------------------------

struct KtTables {
  double p = 2.0;
  Index M = 0;
  // Per (m,k), 1 <= k <= m <= M, flattened as m(m-1)/2 + (k-1).
  std::vector<Index> r, s, i_mk;
  std::vector<double> T;  // T_{m,k} = sum_{j=r}^{s} 1/j
  // Consecutive integer blocks A_m = [block_lo[m-1], block_hi[m-1]].
  std::vector<Index> block_lo, block_hi;
  // Per ambient index n in [1, block_hi.back()].
  std::vector<Index> d;         // distinct positive integers within a block
  std::vector<int> eps;         // +1 / -1
  std::vector<double> b;        // d^{-1/p'}
  std::vector<Index> block_of;  // block number m containing n

  static std::size_t pair_index(Index m, Index k) {
    return static_cast<std::size_t>(m * (m - 1) / 2 + (k - 1));
  }
};

struct KtSystem {
  std::shared_ptr<const KtTables> t;
  Space space;
  Basis basis;
  // The seminorm part: (1/p) sup over blocks and prefixes of the block of
  // |sum a_n b_n|.
  double clover(const SparseVec& f) const;
};

KtSystem build_kt(double p, Index M);
// f_m on A_m with the i_{m,k} marked; expected = H_m^{1/p'} / (p 2^{1/p}).
WitnessRecord kt_witness(const KtSystem& sys, Index m);
// Normalized projected witnesses forming a block sequence isometrically
// equivalent to the c_0 unit basis; eps_k are the required l_p slack factors.
std::vector<WitnessRecord> kt_c0_blocks(const KtSystem& sys,
                                        const std::vector<double>& eps);

// ---------------------------------------------------------------------------
// Rank-one perturbation of the l_p unit basis: a bidemocratic non-total basis.
// ---------------------------------------------------------------------------

struct PerturbedSystem {
  double p = 2.0, q = 2.0;
  Weight w = Weight::constant();
  Index N = 0;
  Basis basis;  // coefficients indexed 2..N; eta(k) = k + 1
};

PerturbedSystem build_perturbed(double p, double q, const Weight& w, Index N);
// Returns (f_m, u_m): f_m approximates e_1, u_m adds the cancelling tail;
// marked set of u_m is the greedy set {eta(1)..eta(m)}.
std::pair<WitnessRecord, WitnessRecord> perturbed_witness(
    const PerturbedSystem& sys, Index m);

// ---------------------------------------------------------------------------
// Blockwise-coupled basis on even/odd coordinates of l_p: bidemocratic and
// total, yet neither quasi-greedy nor Schauder in any order.
// ---------------------------------------------------------------------------

struct BlockwiseSystem {
  double p = 2.0, q = 2.0;
  Weight w = Weight::constant();
  std::vector<Index> t;  // t_0 = 0 < t_1 < ... < t_K block boundaries
  Basis basis;           // coefficients j = 1..t_K
  std::vector<SparseVec> annihilators;  // z*_k over ambient indices
  Index blocks() const { return static_cast<Index>(t.size()) - 1; }
  Index block_of_j(Index j) const;
};

// Block boundaries: t_k smallest with H_{t_k} - H_{t_{k-1}} >= ln(1+k)/2
// (plain harmonic numbers).
std::vector<Index> blockwise_levels(Index K);
BlockwiseSystem build_blockwise(double p, double q, const Weight& w,
                                std::vector<Index> t);

struct BlockwiseWitness {
  WitnessRecord g, f;  // g = projection of f onto the marked set
  double Lambda = 0, Gamma = 0, Theta = 0;
};

// pi, when given, lists the block's coefficient indices in the tested order;
// defaults to the identity (greedy-projection case).
BlockwiseWitness blockwise_witness(const BlockwiseSystem& sys, Index k,
                                   const std::vector<Index>* pi = nullptr);

// ---------------------------------------------------------------------------
// Rotated interleaving of two bases on the max-norm direct sum.
// ---------------------------------------------------------------------------

struct DiamondSystem {
  Basis bx, by;  // scalar-ambient component bases over windows of equal size
  Basis basis;   // coefficients 1..2N; odd/even rotated pairs
};

DiamondSystem build_diamond(const Basis& bx, const Basis& by);
// f_o = sum a_n z_{2n-1} and f_e = sum a_n z_{2n} as coefficient vectors;
// expected = (1/2) max of the two cross-norm ratios of a.
std::pair<WitnessRecord, WitnessRecord> diamond_conditionality_witness(
    const DiamondSystem& sys, const SparseVec& a);

// Unit-vector basis of a space, for use as a diamond component.
Basis unit_basis(const Space& sp, Index window, const std::string& label);

// Coefficient rotation behind the interleaved pair construction and its
// dual-side evaluation: c on 1..2N -> ((c_{2n-1}+c_{2n})/sqrt2,
// (c_{2n-1}-c_{2n})/sqrt2).
std::pair<SparseVec, SparseVec> diamond_rotate(const SparseVec& c);

}  // namespace glab
