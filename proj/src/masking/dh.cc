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

#include "dlagg/masking/dh.h"

#include "dlagg/common/error.h"
#include "dlagg/common/sha256.h"

namespace dlagg {
namespace {

constexpr const char* kGroup14Hex =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD1"
    "29024E088A67CC74020BBEA63B139B22514A08798E3404DD"
    "EF9519B3CD3A431B302B0A6DF25F14374FE1356D6D51C245"
    "E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3D"
    "C2007CB8A163BF0598DA48361C55D39A69163FA8FD24CF5F"
    "83655D23DCA3AD961C62F356208552BB9ED529077096966D"
    "670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9"
    "DE2BCBF6955817183995497CEA956AE515D2261898FA0510"
    "15728E5A8AACAA68FFFFFFFFFFFFFFFF";

mpz_class UniformBelowBig(const mpz_class& bound, SeededRandomSource& rng) {
  const size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const size_t bytes = (bits + 7) / 8;
  const unsigned excess = static_cast<unsigned>(bytes * 8 - bits);
  Bytes buf(bytes);
  while (true) {
    rng.FillBytes(buf);
    buf[0] &= static_cast<uint8_t>(0xFF >> excess);
    mpz_class candidate = DecodeResidue(buf);
    if (candidate < bound) return candidate;
  }
}

}  // namespace

DhParams DhParams::Rfc3526Group14() {
  DhParams params;
  params.name = "rfc3526-2048";
  params.p = mpz_class(kGroup14Hex, 16);
  params.g = 2;
  params.subgroup_order = (params.p - 1) / 2;
  return params;
}

DhParams DhParams::TestGroup1019() {
  DhParams params;
  params.name = "test-1019";
  params.p = 1019;
  params.g = 4;
  params.subgroup_order = 509;
  return params;
}

DhParams DhParams::ByName(const std::string& name) {
  if (name == "rfc3526-2048") return Rfc3526Group14();
  if (name == "test-1019") return TestGroup1019();
  Fail(ErrorCode::kInvalidConfig, "unknown DH group '" + name + "'");
}

size_t DhParams::residue_width() const {
  return (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8;
}

size_t DhParams::secret_key_bits() const {
  return mpz_sizeinbase(subgroup_order.get_mpz_t(), 2);
}

bool DhParams::is_safe_prime_group() const { return p == 2 * subgroup_order + 1; }

void DhParams::Validate() const {
  if (p < 5 || subgroup_order < 2 || g <= 1 || g >= p) {
    Fail(ErrorCode::kInvalidConfig, "malformed DH parameters");
  }
  mpz_class check;
  mpz_powm(check.get_mpz_t(), g.get_mpz_t(), subgroup_order.get_mpz_t(),
           p.get_mpz_t());
  if (check != 1) {
    Fail(ErrorCode::kInvalidConfig, "g does not generate the prime-order subgroup");
  }
}

KeyPair DhKeyPairFromSecret(const DhParams& params, const mpz_class& secret_key) {
  KeyPair kp;
  kp.secret_key = secret_key;
  mpz_powm(kp.public_key.get_mpz_t(), params.g.get_mpz_t(),
           secret_key.get_mpz_t(), params.p.get_mpz_t());
  return kp;
}

KeyPair DhKeyGen(const DhParams& params, SeededRandomSource& rng) {
  mpz_class sk = UniformBelowBig(params.subgroup_order - 1, rng) + 1;
  return DhKeyPairFromSecret(params, sk);
}

bool IsValidPublicKey(const DhParams& params, const mpz_class& pk) {
  if (pk <= 1 || pk >= params.p) return false;
  if (params.is_safe_prime_group()) {
    return mpz_legendre(pk.get_mpz_t(), params.p.get_mpz_t()) == 1;
  }
  mpz_class check;
  mpz_powm(check.get_mpz_t(), pk.get_mpz_t(), params.subgroup_order.get_mpz_t(),
           params.p.get_mpz_t());
  return check == 1;
}

MaskSeed DhAgree(const mpz_class& secret_key, const mpz_class& pk_peer,
                 const DhParams& params) {
  if (!IsValidPublicKey(params, pk_peer)) {
    Fail(ErrorCode::kInvalidPublicKey, "peer public key is not in the subgroup");
  }
  mpz_class shared;
  mpz_powm(shared.get_mpz_t(), pk_peer.get_mpz_t(), secret_key.get_mpz_t(),
           params.p.get_mpz_t());
  return MaskSeed{Sha256::Hash(EncodeResidue(shared, params.residue_width()))};
}

Bytes EncodeResidue(const mpz_class& value, size_t width) {
  Bytes out(width, 0);
  size_t count = 0;
  if (value != 0) {
    const size_t needed = (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
    if (needed > width) {
      Fail(ErrorCode::kInvalidConfig, "residue wider than its encoding");
    }
    mpz_export(out.data() + (width - needed), &count, 1, 1, 1, 0,
               value.get_mpz_t());
  }
  return out;
}

mpz_class DecodeResidue(std::span<const uint8_t> bytes) {
  mpz_class v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

std::vector<uint64_t> SplitIntoLimbs(const mpz_class& value, size_t total_bits,
                                     unsigned limb_bits) {
  if (limb_bits == 0 || limb_bits > 63) {
    Fail(ErrorCode::kInvalidConfig, "limb width must be in [1, 63]");
  }
  if (mpz_sizeinbase(value.get_mpz_t(), 2) > total_bits && value != 0) {
    Fail(ErrorCode::kInvalidConfig, "value wider than its limb budget");
  }
  std::vector<uint64_t> limbs(LimbCount(total_bits, limb_bits));
  mpz_class rest = value;
  const mpz_class mask = (mpz_class(1) << limb_bits) - 1;
  for (auto& limb : limbs) {
    mpz_class low = rest & mask;
    limb = mpz_get_ui(low.get_mpz_t());
    rest >>= limb_bits;
  }
  return limbs;
}

mpz_class JoinLimbs(std::span<const uint64_t> limbs, unsigned limb_bits) {
  mpz_class value = 0;
  for (size_t i = limbs.size(); i-- > 0;) {
    value <<= limb_bits;
    value += mpz_class(static_cast<unsigned long>(limbs[i]));
  }
  return value;
}

}  // namespace dlagg
