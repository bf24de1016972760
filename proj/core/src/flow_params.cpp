#include "vsparse/flow_params.hpp"

#include <cmath>
#include <sstream>

#include "vsparse/errors.hpp"

namespace vsp {

long next_pow2(long x) {
  long p = 1;
  while (p < x) p <<= 1;
  return p;
}

double FlowParams::beta(double kk) const { return std::max(1.0, c_beta * std::log2(std::max(1.0, kk))); }

double FlowParams::alpha_w(double z) const {
  return 1.0 / (static_cast<double>(weak_mult) * std::max(1.0, std::log2(std::max(1.0, z))));
}

double FlowParams::kstar_for(long kk) const {
  return 2.0 * static_cast<double>(kk) * static_cast<double>(r) * std::log2(static_cast<double>(r));
}

mpz_class FlowParams::F(long kp) const {
  mpz_class f = 1;
  for (long p = next_pow2(std::max(kp, 1L)); p > 4; p >>= 1) f *= f_factor;
  return f;
}

std::string FlowParams::profile_name() const {
  return profile == Profile::Theoretical ? "theoretical" : "aggressive";
}

std::string FlowParams::describe() const {
  std::ostringstream os;
  os << "profile=" << profile_name() << " eta*=" << eta_star << " r=" << r << " k=" << k
     << " k*=" << kstar << " beta=max(1," << c_beta << "*log2 k) F-factor=" << f_factor.get_str()
     << " F(k)=" << F(k).get_str() << " mult(contract,phase2,refine)=" << contract_mult << ","
     << phase2_mult << "," << refine_mult << " router-shortcut=" << (router_shortcut ? 1 : 0);
  return os.str();
}

long solve_r(long k, double c_beta, long weak_mult) {
  FlowParams p;
  p.c_beta = c_beta;
  p.weak_mult = weak_mult;
  long r = 2;
  for (int it = 0; it < 200; ++it) {
    p.r = r;
    double ks = p.kstar_for(std::max(k, 1L));
    double need = 24.0 * p.beta(ks) / p.alpha_w(ks);
    long next = static_cast<long>(std::floor(need)) + 1;
    if (next <= r) return r;  // r > need already
    r = next;
  }
  throw InternalError("r fixpoint did not settle");
}

FlowParams make_flow_params(long k, const FlowParamOptions& opt) {
  if (opt.c_beta <= 0) throw ParamError("c_beta must be positive");
  if (opt.c_f < 1) throw ParamError("c_F must be at least 1");
  if (opt.r_override < 0 || opt.r_override == 1) throw ParamError("r must be at least 2");
  FlowParams p;
  p.profile = opt.profile;
  p.c_beta = opt.c_beta;
  p.weak_mult = opt.weak_mult;
  p.k = k;
  if (opt.profile == Profile::Theoretical) {
    p.r = opt.r_override ? opt.r_override : solve_r(k, opt.c_beta, opt.weak_mult);
    mpz_class r = static_cast<unsigned long>(p.r);
    long lg = static_cast<long>(std::ceil(std::log2(static_cast<double>(p.r))));
    p.f_factor = (mpz_class(1) << 16) * r * r * r * lg;
  } else {
    p.r = opt.r_override ? opt.r_override : 3;
    p.f_factor = static_cast<unsigned long>(opt.c_f);
    p.contract_mult = 1;
    p.phase2_mult = 1;
    p.refine_mult = 4;
    p.router_shortcut = false;
  }
  p.kstar = p.kstar_for(k);
  return p;
}

}  // namespace vsp
