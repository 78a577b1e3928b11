// Copyright 2026 The Santext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SANTEXT_RANDOM_H_
#define SANTEXT_RANDOM_H_

#include <cstdint>
#include <random>

namespace santext {

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream namespaces under one master seed.
enum class StreamDomain : std::uint64_t {
  kDocument = 1,
  kAudit = 2,
  kVerification = 3,
};

inline std::uint64_t DeriveStreamSeed(std::uint64_t master_seed,
                                      StreamDomain domain,
                                      std::uint64_t stream_id) {
  std::uint64_t h = SplitMix64(master_seed);
  h = SplitMix64(h ^ static_cast<std::uint64_t>(domain));
  return SplitMix64(h ^ SplitMix64(stream_id));
}

// mt19937_64 with a fixed bits-to-double conversion. Outputs are identical
// across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextBits() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

inline RandomStream MakeStream(std::uint64_t master_seed, StreamDomain domain,
                               std::uint64_t stream_id) {
  return RandomStream(DeriveStreamSeed(master_seed, domain, stream_id));
}

}  // namespace santext

#endif  // SANTEXT_RANDOM_H_
