/*
 * Copyright 2026 The dlagg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DLAGG_MASKING_DH_H_
#define DLAGG_MASKING_DH_H_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dlagg/common/bytes.h"
#include "dlagg/common/seeded_random.h"
#include "dlagg/masking/stream.h"

namespace dlagg {

// Prime-order subgroup of Z_p^* used for key agreement; hash is SHA-256.
struct DhParams {
  std::string name;
  mpz_class p;
  mpz_class g;
  mpz_class subgroup_order;

  // 2048-bit MODP group of RFC 3526 (safe prime, g = 2).
  static DhParams Rfc3526Group14();
  // p = 1019 = 2 * 509 + 1 with g = 4 generating the order-509 subgroup.
  // Small enough for exhaustive checks; offers no security.
  static DhParams TestGroup1019();
  // Looks up "rfc3526-2048" or "test-1019"; throws InvalidConfig otherwise.
  static DhParams ByName(const std::string& name);

  // Fixed width of a serialized residue: ceil(bits(p) / 8).
  size_t residue_width() const;
  size_t secret_key_bits() const;
  bool is_safe_prime_group() const;
  void Validate() const;
};

struct KeyPair {
  mpz_class secret_key;  // in [1, subgroup_order)
  mpz_class public_key;  // g^secret_key mod p
};

KeyPair DhKeyGen(const DhParams& params, SeededRandomSource& rng);
KeyPair DhKeyPairFromSecret(const DhParams& params, const mpz_class& secret_key);

// 1 < pk < p and pk^subgroup_order = 1 (a Legendre symbol check for
// safe-prime groups).
bool IsValidPublicKey(const DhParams& params, const mpz_class& pk);

// SHA-256 of the fixed-width big-endian encoding of pk_peer^secret_key mod p.
// Throws InvalidPublicKey if pk_peer is outside the subgroup.
MaskSeed DhAgree(const mpz_class& secret_key, const mpz_class& pk_peer,
                 const DhParams& params);

Bytes EncodeResidue(const mpz_class& value, size_t width);
mpz_class DecodeResidue(std::span<const uint8_t> bytes);

// Splits a non-negative integer below 2^total_bits into little-endian limbs
// of limb_bits bits each, so every limb fits in a field element.
std::vector<uint64_t> SplitIntoLimbs(const mpz_class& value, size_t total_bits,
                                     unsigned limb_bits);
mpz_class JoinLimbs(std::span<const uint64_t> limbs, unsigned limb_bits);

inline size_t LimbCount(size_t total_bits, unsigned limb_bits) {
  return (total_bits + limb_bits - 1) / limb_bits;
}

}  // namespace dlagg

#endif  // DLAGG_MASKING_DH_H_
