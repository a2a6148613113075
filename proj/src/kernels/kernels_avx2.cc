// Copyright 2026 The qpurity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2 + FMA variants of the mass kernels. This translation unit is compiled
// with -mavx2 -mfma and must only be entered after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "qpurity/kernels.h"

namespace qpurity::kernels::avx2 {

namespace {

const __m256d kMagic = _mm256_set1_pd(6755399441055744.0);  // 1.5 * 2^52
const __m256d kLn2Hi = _mm256_set1_pd(6.93147180369123816490e-01);
const __m256d kLn2Lo = _mm256_set1_pd(1.90821492927058770002e-10);

// Integral-valued doubles with |v| < 2^51 to int64 and back.
inline __m256i to_int64(__m256d v) {
    return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(v, kMagic)), _mm256_castpd_si256(kMagic));
}

inline __m256d to_double(__m256i v) {
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(v, _mm256_castpd_si256(kMagic))), kMagic);
}

// 2^k for integral k in [-1022, 1023].
inline __m256d pow2(__m256d k) {
    __m256i biased = _mm256_add_epi64(to_int64(k), _mm256_set1_epi64x(1023));
    return _mm256_castsi256_pd(_mm256_slli_epi64(biased, 52));
}

inline __m256d vexp(__m256d x) {
    x = _mm256_max_pd(x, _mm256_set1_pd(-746.0));
    x = _mm256_min_pd(x, _mm256_set1_pd(709.78));
    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634074)),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, kLn2Hi, x);
    r = _mm256_fnmadd_pd(n, kLn2Lo, r);

    // Taylor series through r^13; |r| <= ln(2)/2.
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    // Two-step scaling keeps each factor normal down to the subnormal range.
    __m256d half = _mm256_floor_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)));
    __m256d rest = _mm256_sub_pd(n, half);
    return _mm256_mul_pd(_mm256_mul_pd(p, pow2(half)), pow2(rest));
}

// Natural log of positive normal doubles.
inline __m256d vlog(__m256d x) {
    __m256i bits = _mm256_castpd_si256(x);
    __m256i exponent = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
    __m256i mant_bits = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                        _mm256_set1_epi64x(0x3FF0000000000000LL));
    __m256d m = _mm256_castsi256_pd(mant_bits);
    __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.41421356237309504880), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    __m256d e = _mm256_add_pd(to_double(exponent), _mm256_and_pd(big, _mm256_set1_pd(1.0)));

    __m256d f = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
    __m256d s = _mm256_div_pd(f, _mm256_add_pd(f, _mm256_set1_pd(2.0)));
    __m256d z = _mm256_mul_pd(s, s);
    // R(z) = sum_{k>=1} 2 z^k / (2k + 1); |s| <= 0.1716.
    __m256d R = _mm256_set1_pd(2.0 / 23.0);
    R = _mm256_fmadd_pd(R, z, _mm256_set1_pd(2.0 / 21.0));
    R = _mm256_fmadd_pd(R, z, _mm256_set1_pd(2.0 / 19.0));
    R = _mm256_fmadd_pd(R, z, _mm256_set1_pd(2.0 / 17.0));
    R = _mm256_fmadd_pd(R, z, _mm256_set1_pd(2.0 / 15.0));
    R = _mm256_fmadd_pd(R, z, _mm256_set1_pd(2.0 / 13.0));
    R = _mm256_fmadd_pd(R, z, _mm256_set1_pd(2.0 / 11.0));
    R = _mm256_fmadd_pd(R, z, _mm256_set1_pd(2.0 / 9.0));
    R = _mm256_fmadd_pd(R, z, _mm256_set1_pd(2.0 / 7.0));
    R = _mm256_fmadd_pd(R, z, _mm256_set1_pd(2.0 / 5.0));
    R = _mm256_fmadd_pd(R, z, _mm256_set1_pd(2.0 / 3.0));
    R = _mm256_mul_pd(R, z);

    // log(1 + f) = f - (hfsq - s (hfsq + R))
    __m256d hfsq = _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_mul_pd(f, f));
    __m256d log1pf = _mm256_sub_pd(f, _mm256_fnmadd_pd(s, _mm256_add_pd(hfsq, R), hfsq));
    return _mm256_fmadd_pd(e, kLn2Hi, _mm256_fmadd_pd(e, kLn2Lo, log1pf));
}

// 1 - exp(z) for z <= 0, accurate near z = 0.
inline __m256d vone_minus_exp(__m256d z) {
    __m256d p = _mm256_set1_pd(1.0 / 1307674368000.0);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 87178291200.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 6227020800.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0));
    __m256d series = _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), z), p);
    __m256d direct = _mm256_sub_pd(_mm256_set1_pd(1.0), vexp(z));
    __m256d small = _mm256_cmp_pd(z, _mm256_set1_pd(-0.5), _CMP_GT_OQ);
    return _mm256_blendv_pd(direct, series, small);
}

}  // namespace

bool compiled() {
    return true;
}

void accumulate_masses(const NodeTerms &node, const MassLanes &lanes, std::size_t begin, std::size_t end,
                       double *acc_perp, double *acc_par) {
    const __m256d log_p = _mm256_set1_pd(node.log_p);
    const __m256d log_q = _mm256_set1_pd(node.log_q);
    const __m256d log_x = _mm256_set1_pd(node.log_p - node.log_q);
    const __m256d log_denom = vlog(vone_minus_exp(log_x));
    const __m256d w_perp = _mm256_set1_pd(node.weight_perp);
    const __m256d w_par = _mm256_set1_pd(node.weight_par);
    for (std::size_t i = begin; i < end; i += kLaneWidth) {
        __m256d len = _mm256_loadu_pd(&lanes.span_len[i]);
        __m256d geom = _mm256_sub_pd(vlog(vone_minus_exp(_mm256_mul_pd(len, log_x))), log_denom);
        __m256d log_mass = _mm256_fmadd_pd(_mm256_loadu_pd(&lanes.exp_p[i]), log_p, _mm256_loadu_pd(&lanes.log_coeff[i]));
        log_mass = _mm256_fmadd_pd(_mm256_loadu_pd(&lanes.exp_q[i]), log_q, log_mass);
        __m256d mass = vexp(_mm256_add_pd(log_mass, geom));
        _mm256_storeu_pd(&acc_perp[i], _mm256_fmadd_pd(w_perp, mass, _mm256_loadu_pd(&acc_perp[i])));
        _mm256_storeu_pd(&acc_par[i], _mm256_fmadd_pd(w_par, mass, _mm256_loadu_pd(&acc_par[i])));
    }
}

void exp_batch(const double *in, double *out, std::size_t n) {
    for (std::size_t i = 0; i < n; i += kLaneWidth) {
        _mm256_storeu_pd(out + i, vexp(_mm256_loadu_pd(in + i)));
    }
}

void log_batch(const double *in, double *out, std::size_t n) {
    for (std::size_t i = 0; i < n; i += kLaneWidth) {
        _mm256_storeu_pd(out + i, vlog(_mm256_loadu_pd(in + i)));
    }
}

}  // namespace qpurity::kernels::avx2
