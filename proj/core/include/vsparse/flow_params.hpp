#pragma once

#include <string>

#include "vsparse/rational.hpp"

namespace vsp {

enum class Profile { Theoretical, Aggressive };

struct FlowParamOptions {
  Profile profile = Profile::Aggressive;
  double c_beta = 1.0;  // beta(k) = max(1, c_beta * log2 k)
  long c_f = 4;         // aggressive: F(k) = c_f * F(k/2)
  long r_override = 0;  // 0: theoretical fixpoint, aggressive 3
  long weak_mult = 128;
};

struct FlowParams {
  Profile profile = Profile::Aggressive;
  long eta_star = 34;
  double c_beta = 1.0;
  long weak_mult = 128;
  long k = 0;     // terminal count the constants were fixed for
  long r = 3;
  double kstar = 0;
  mpz_class f_factor;  // F(2p) = f_factor * F(p) for p >= 4
  // |S| > contract_mult * F(|out S|) makes a connected set contractible;
  // phase2_mult and refine_mult replace 2^7 and 2^9 elsewhere in the search.
  long contract_mult = 128;
  long phase2_mult = 128;
  long refine_mult = 512;
  // check R itself for being a good router before searching
  bool router_shortcut = true;

  mpz_class F(long kp) const;
  double beta(double k) const;
  double alpha_w(double z) const;  // 1/(weak_mult * max(1, log2 z))
  double kstar_for(long kk) const;  // 2 * kk * r * log2 r
  std::string profile_name() const;
  std::string describe() const;
};

// Theoretical: r is the smallest integer with r > 24 beta(k*)/alpha_w(k*),
// k* = 2kr log2 r, found by iterating from r = 2; F's factor is
// 2^16 r^3 ceil(log2 r) (log rounded up so F stays an integer and only
// grows). Aggressive: r = 3 (or the override), factor c_f, multipliers 1/1/4,
// no router shortcut.
FlowParams make_flow_params(long k, const FlowParamOptions& opt = {});

// The fixpoint on its own, for inspection.
long solve_r(long k, double c_beta, long weak_mult);

// Smallest power of two >= x (x >= 1).
long next_pow2(long x);

}  // namespace vsp
