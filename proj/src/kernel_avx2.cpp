// kernel_avx2.cpp — 4-lane factor kernel. Compiled with -mavx2 -mfma; only
// reached after the dispatcher checks cpuid.
//
// The vector sin/cos use a 3-term Cody-Waite reduction by pi/2 (exact for
// quotients below 2^20, i.e. |x| up to ~1.6e6) and the classic degree-13/14
// minimax polynomials; the vector log follows the fdlibm argument reduction
// into [sqrt(2)/2, sqrt(2)) with its degree-7 rational correction. Both stay
// within ~1 ulp of libm, which keeps the reduced log-sum within ~1e-13 of
// the scalar kernel over a full mode table.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "gpchain/kernels.hpp"

namespace gpchain {

namespace {

// pi/2 split so that q * PIO2_1 and q * PIO2_2 are exact for |q| < 2^20.
const double kPio2_1 = 1.57079632673412561417e+00;
const double kPio2_2 = 6.07710050630396597660e-11;
const double kPio2_2t = 2.02226624879595063154e-21;
const double kTwoOverPi = 6.36619772367581382433e-01;

const double kSinC[6] = {
    -1.66666666666666307295e-1, 8.33333333332211858878e-3,
    -1.98412698295895385996e-4, 2.75573136213857245213e-6,
    -2.50507477628578072866e-8, 1.58962301576546568060e-10};
const double kCosC[6] = {
    4.16666666666665929218e-2,  -1.38888888888730564116e-3,
    2.48015872888517179684e-5,  -2.75573141792967388112e-7,
    2.08757008419747316778e-9,  -1.13585365213876817300e-11};

const double kLg[7] = {
    6.666666666666735130e-01, 3.999999999940941908e-01,
    2.857142874366239149e-01, 2.222219843214978396e-01,
    1.818357216161805012e-01, 1.531383769920937332e-01,
    1.479819860511658591e-01};
const double kLn2Hi = 6.93147180369123816490e-01;
const double kLn2Lo = 1.90821492927058770002e-10;

inline __m256d poly5(__m256d z, const double c[6]) {
  __m256d p = _mm256_set1_pd(c[5]);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[4]));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[3]));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[2]));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[1]));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[0]));
  return p;
}

// sin and cos of four doubles at once.
inline void vsincos(__m256d x, __m256d& s, __m256d& c) {
  const __m256d qd =
      _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(qd, _mm256_set1_pd(kPio2_1), x);
  r = _mm256_fnmadd_pd(qd, _mm256_set1_pd(kPio2_2), r);
  r = _mm256_fnmadd_pd(qd, _mm256_set1_pd(kPio2_2t), r);

  const __m256d z = _mm256_mul_pd(r, r);
  // sin(r) = r + r^3 P(r^2), cos(r) = 1 - z/2 + z^2 Q(z)
  const __m256d sp =
      _mm256_fmadd_pd(_mm256_mul_pd(poly5(z, kSinC), z), r, r);
  __m256d cp = _mm256_mul_pd(poly5(z, kCosC), _mm256_mul_pd(z, z));
  cp = _mm256_add_pd(_mm256_fnmadd_pd(z, _mm256_set1_pd(0.5),
                                      _mm256_set1_pd(1.0)), cp);

  // Quadrant bits of q pick the polynomial and the sign.
  const __m128i qi = _mm256_cvtpd_epi32(qd);
  const __m256i qe = _mm256_cvtepi32_epi64(qi);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256d odd = _mm256_castsi256_pd(_mm256_cmpeq_epi64(
      _mm256_and_si256(qe, one), one));
  const __m256i sbit = _mm256_slli_epi64(
      _mm256_and_si256(_mm256_srli_epi64(qe, 1), one), 63);
  const __m256i cbit = _mm256_slli_epi64(
      _mm256_and_si256(_mm256_srli_epi64(_mm256_add_epi64(qe, one), 1), one),
      63);
  s = _mm256_xor_pd(_mm256_blendv_pd(sp, cp, odd),
                    _mm256_castsi256_pd(sbit));
  c = _mm256_xor_pd(_mm256_blendv_pd(cp, sp, odd),
                    _mm256_castsi256_pd(cbit));
}

// Natural log of four normal positive doubles.
inline __m256d vlog(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i expo_raw = _mm256_srli_epi64(bits, 52);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(
          expo_raw, _mm256_castpd_si256(_mm256_set1_pd(4503599627370496.0)))),
      _mm256_set1_pd(4503599627370496.0 + 1023.0));
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll);
  const __m256i one_bits = _mm256_castpd_si256(_mm256_set1_pd(1.0));
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  const __m256d big = _mm256_cmp_pd(
      m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d f = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
  const __m256d s = _mm256_div_pd(
      f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);
  // Even powers of z carry Lg2/Lg4/Lg6, odd powers Lg1/Lg3/Lg5/Lg7.
  __m256d t1 = _mm256_fmadd_pd(w, _mm256_set1_pd(kLg[5]),
                               _mm256_set1_pd(kLg[3]));
  t1 = _mm256_fmadd_pd(w, t1, _mm256_set1_pd(kLg[1]));
  t1 = _mm256_mul_pd(w, t1);
  __m256d t2 = _mm256_fmadd_pd(w, _mm256_set1_pd(kLg[6]),
                               _mm256_set1_pd(kLg[4]));
  t2 = _mm256_fmadd_pd(w, t2, _mm256_set1_pd(kLg[2]));
  t2 = _mm256_fmadd_pd(w, t2, _mm256_set1_pd(kLg[0]));
  const __m256d r = _mm256_fmadd_pd(t2, z, t1);
  const __m256d hfsq = _mm256_mul_pd(_mm256_set1_pd(0.5),
                                     _mm256_mul_pd(f, f));
  // e*ln2_hi - ((hfsq - (s*(hfsq+R) + e*ln2_lo)) - f)
  const __m256d inner = _mm256_fmadd_pd(
      s, _mm256_add_pd(hfsq, r),
      _mm256_mul_pd(e, _mm256_set1_pd(kLn2Lo)));
  return _mm256_fmadd_pd(
      e, _mm256_set1_pd(kLn2Hi),
      _mm256_sub_pd(f, _mm256_sub_pd(hfsq, inner)));
}

// Scalar re-evaluation of one mode, for blocks where a factor left the
// vector fast path (zero crossing or abort territory).
inline double scalar_factor(const FactorTable& tb, std::size_t i, double t) {
  const double s0 = std::sin(tb.w0[i] * t);
  const double s1 = std::sin(tb.w1[i] * t);
  const double cd = std::cos(tb.dw[i] * t);
  const double b = 2.0 * s0 * s1;
  return 1.0 + b * (tb.a[i] * cd - tb.as2d[i] * b) - tb.q0[i] * s0 * s0 -
         tb.q1[i] * s1 * s1;
}

}  // namespace

bool avx2_available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

KernelScan avx2_factor_kernel(const FactorTable& tb, double t,
                              double* log_out) {
  KernelScan scan;
  const __m256d vt = _mm256_set1_pd(t);
  __m256d vmin = _mm256_set1_pd(1.0);
  const __m256d tiny = _mm256_set1_pd(std::numeric_limits<double>::min());
  for (std::size_t i = 0; i < tb.padded; i += 4) {
    __m256d s0, c0, s1, c1;
    vsincos(_mm256_mul_pd(_mm256_loadu_pd(&tb.w0[i]), vt), s0, c0);
    vsincos(_mm256_mul_pd(_mm256_loadu_pd(&tb.w1[i]), vt), s1, c1);
    // cos((w0-w1) t) from the two angle pairs, no third reduction.
    const __m256d cd = _mm256_fmadd_pd(c0, c1, _mm256_mul_pd(s0, s1));
    const __m256d b =
        _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_mul_pd(s0, s1));
    const __m256d ab = _mm256_fnmadd_pd(_mm256_loadu_pd(&tb.as2d[i]), b,
                                        _mm256_mul_pd(
                                            _mm256_loadu_pd(&tb.a[i]), cd));
    __m256d f = _mm256_fmadd_pd(b, ab, _mm256_set1_pd(1.0));
    f = _mm256_fnmadd_pd(_mm256_loadu_pd(&tb.q0[i]), _mm256_mul_pd(s0, s0),
                         f);
    f = _mm256_fnmadd_pd(_mm256_loadu_pd(&tb.q1[i]), _mm256_mul_pd(s1, s1),
                         f);
    vmin = _mm256_min_pd(vmin, f);
    if (_mm256_movemask_pd(_mm256_cmp_pd(f, tiny, _CMP_LT_OQ)) != 0) {
      // Rare: a factor at or below zero in this block. Redo the four lanes
      // in scalar so clamping and abort semantics match the reference.
      for (std::size_t j = i; j < i + 4; ++j) {
        double fs = scalar_factor(tb, j, t);
        if (fs < scan.min_factor) scan.min_factor = fs;
        if (fs < 0.0) {
          if (fs < -kFactorTolerance) {
            log_out[j] = std::numeric_limits<double>::quiet_NaN();
            continue;
          }
          ++scan.clamped;
          fs = 0.0;
        }
        log_out[j] = std::log(fs);
      }
      continue;
    }
    _mm256_storeu_pd(&log_out[i], vlog(f));
  }
  alignas(32) double lanes[4];
  _mm256_storeu_pd(lanes, vmin);
  for (double v : lanes)
    if (v < scan.min_factor) scan.min_factor = v;
  if (scan.min_factor < -kFactorTolerance) {
    double worst = 1.0;
    for (std::size_t i = 0; i < tb.padded; ++i) {
      const double fs = scalar_factor(tb, i, t);
      if (fs < worst) {
        worst = fs;
        scan.min_index = i;
      }
    }
  }
  return scan;
}

}  // namespace gpchain

#endif  // x86_64
