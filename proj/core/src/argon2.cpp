#include "layerkey/argon2.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <thread>
#include <vector>

#include "layerkey/error.hpp"
#include "layerkey/hash.hpp"
#include "layerkey/secure.hpp"

namespace layerkey::argon2 {
namespace {

constexpr std::size_t kBlockWords = 128;
constexpr std::size_t kBlockBytes = 1024;
constexpr std::uint32_t kAddressesInBlock = 128;
constexpr std::uint32_t kPrehashBytes = 64;
constexpr std::uint32_t kTypeId = 2;  // Argon2id
constexpr std::uint32_t kMaxLanes = 0xFFFFFF;

struct Block {
  std::array<std::uint64_t, kBlockWords> v{};
};

// Scratch owned by one segment fill; wiped when the segment is done.
struct Scratch {
  Block r;
  Block tmp;
  Block address;
  Block input;
  Block zero;

  ~Scratch() { secure_erase(this, sizeof(*this)); }
};

struct WipedBlock {
  Block block;
  ~WipedBlock() { secure_erase(&block, sizeof(block)); }
};

inline void store32(std::uint8_t* dst, std::uint32_t w) {
  for (int i = 0; i < 4; ++i) dst[i] = static_cast<std::uint8_t>(w >> (8 * i));
}

inline void store64(std::uint8_t* dst, std::uint64_t w) {
  for (int i = 0; i < 8; ++i) dst[i] = static_cast<std::uint8_t>(w >> (8 * i));
}

inline std::uint64_t load64(const std::uint8_t* src) {
  std::uint64_t w = 0;
  for (int i = 7; i >= 0; --i) w = (w << 8) | src[i];
  return w;
}

// H' from RFC 9106 section 3.3.
void blake2b_long(std::span<std::uint8_t> out, std::span<const std::uint8_t> in) {
  std::array<std::uint8_t, 4> len_le{};
  store32(len_le.data(), static_cast<std::uint32_t>(out.size()));
  if (out.size() <= 64) {
    hash::blake2b(out, {len_le, in});
    return;
  }
  SecretArray<64> v_store;
  SecretArray<64> next_store;
  auto v = v_store.mutable_bytes();
  auto next = next_store.mutable_bytes();
  hash::blake2b(v, {len_le, in});
  std::copy_n(v.begin(), 32, out.begin());
  std::size_t pos = 32;
  std::size_t remaining = out.size() - 32;
  while (remaining > 64) {
    hash::blake2b(next, {v});
    std::copy(next.begin(), next.end(), v.begin());
    std::copy_n(v.begin(), 32, out.begin() + static_cast<std::ptrdiff_t>(pos));
    pos += 32;
    remaining -= 32;
  }
  hash::blake2b(out.subspan(pos, remaining), {v});
}

inline std::uint64_t blamka(std::uint64_t x, std::uint64_t y) {
  constexpr std::uint64_t kLow = 0xFFFFFFFFull;
  return x + y + 2 * ((x & kLow) * (y & kLow));
}

inline void mix(std::uint64_t& a, std::uint64_t& b, std::uint64_t& c, std::uint64_t& d) {
  a = blamka(a, b);
  d = std::rotr(d ^ a, 32);
  c = blamka(c, d);
  b = std::rotr(b ^ c, 24);
  a = blamka(a, b);
  d = std::rotr(d ^ a, 16);
  c = blamka(c, d);
  b = std::rotr(b ^ c, 63);
}

// BLAKE2b round without message words over 16 words selected by `at`.
template <class At>
inline void permute(std::array<std::uint64_t, kBlockWords>& v, At at) {
  mix(v[at(0)], v[at(4)], v[at(8)], v[at(12)]);
  mix(v[at(1)], v[at(5)], v[at(9)], v[at(13)]);
  mix(v[at(2)], v[at(6)], v[at(10)], v[at(14)]);
  mix(v[at(3)], v[at(7)], v[at(11)], v[at(15)]);
  mix(v[at(0)], v[at(5)], v[at(10)], v[at(15)]);
  mix(v[at(1)], v[at(6)], v[at(11)], v[at(12)]);
  mix(v[at(2)], v[at(7)], v[at(8)], v[at(13)]);
  mix(v[at(3)], v[at(4)], v[at(9)], v[at(14)]);
}

// Compression G: next = P(prev ^ ref) ^ (prev ^ ref) [^ next when xoring].
void fill_block(const Block& prev, const Block& ref, Block& next, bool with_xor, Scratch& s) {
  for (std::size_t k = 0; k < kBlockWords; ++k) s.r.v[k] = ref.v[k] ^ prev.v[k];
  s.tmp = s.r;
  if (with_xor) {
    for (std::size_t k = 0; k < kBlockWords; ++k) s.tmp.v[k] ^= next.v[k];
  }
  for (std::size_t i = 0; i < 8; ++i) {
    permute(s.r.v, [i](std::size_t j) { return 16 * i + j; });
  }
  for (std::size_t i = 0; i < 8; ++i) {
    permute(s.r.v, [i](std::size_t j) { return 2 * i + (j / 2) * 16 + (j % 2); });
  }
  for (std::size_t k = 0; k < kBlockWords; ++k) next.v[k] = s.tmp.v[k] ^ s.r.v[k];
}

void next_addresses(Scratch& s) {
  s.input.v[6] += 1;
  fill_block(s.zero, s.input, s.address, false, s);
  fill_block(s.zero, s.address, s.address, false, s);
}

struct Instance {
  SecureVector<Block> memory;
  std::uint32_t passes = 0;
  std::uint32_t lanes = 0;
  std::uint32_t lane_length = 0;
  std::uint32_t segment_length = 0;
  std::uint32_t memory_blocks = 0;
};

std::uint32_t reference_index(const Instance& inst, std::uint32_t pass, std::uint32_t slice, std::uint32_t index,
                              std::uint32_t pseudo_rand, bool same_lane) {
  const std::uint32_t seg = inst.segment_length;
  std::uint32_t area = 0;
  if (pass == 0) {
    if (slice == 0) {
      area = index - 1;
    } else if (same_lane) {
      area = slice * seg + index - 1;
    } else {
      area = slice * seg - (index == 0 ? 1u : 0u);
    }
  } else if (same_lane) {
    area = inst.lane_length - seg + index - 1;
  } else {
    area = inst.lane_length - seg - (index == 0 ? 1u : 0u);
  }

  std::uint64_t rel = pseudo_rand;
  rel = (rel * rel) >> 32;
  rel = area - 1 - ((static_cast<std::uint64_t>(area) * rel) >> 32);

  std::uint32_t start = 0;
  if (pass != 0) start = (slice == kSyncPoints - 1) ? 0 : (slice + 1) * seg;
  return static_cast<std::uint32_t>((start + rel) % inst.lane_length);
}

void fill_segment(Instance& inst, std::uint32_t pass, std::uint32_t lane, std::uint32_t slice) {
  Scratch s;
  const bool independent = pass == 0 && slice < kSyncPoints / 2;
  if (independent) {
    s.input.v[0] = pass;
    s.input.v[1] = lane;
    s.input.v[2] = slice;
    s.input.v[3] = inst.memory_blocks;
    s.input.v[4] = inst.passes;
    s.input.v[5] = kTypeId;
  }

  std::uint32_t start = 0;
  if (pass == 0 && slice == 0) {
    start = 2;
    if (independent) next_addresses(s);
  }

  std::size_t curr = static_cast<std::size_t>(lane) * inst.lane_length + slice * inst.segment_length + start;
  std::size_t prev = (curr % inst.lane_length == 0) ? curr + inst.lane_length - 1 : curr - 1;

  for (std::uint32_t i = start; i < inst.segment_length; ++i, ++curr, ++prev) {
    if (curr % inst.lane_length == 1) prev = curr - 1;

    std::uint64_t pseudo_rand = 0;
    if (independent) {
      if (i % kAddressesInBlock == 0) next_addresses(s);
      pseudo_rand = s.address.v[i % kAddressesInBlock];
    } else {
      pseudo_rand = inst.memory[prev].v[0];
    }

    std::uint32_t ref_lane = static_cast<std::uint32_t>((pseudo_rand >> 32) % inst.lanes);
    if (pass == 0 && slice == 0) ref_lane = lane;

    const std::uint32_t ref_index = reference_index(inst, pass, slice, i, static_cast<std::uint32_t>(pseudo_rand),
                                                    ref_lane == lane);
    const Block& ref = inst.memory[static_cast<std::size_t>(inst.lane_length) * ref_lane + ref_index];
    fill_block(inst.memory[prev], ref, inst.memory[curr], pass != 0, s);
  }
}

void fill_memory(Instance& inst, unsigned threads) {
  const unsigned workers = std::max(1u, std::min(threads, inst.lanes));
  for (std::uint32_t pass = 0; pass < inst.passes; ++pass) {
    for (std::uint32_t slice = 0; slice < kSyncPoints; ++slice) {
      if (workers == 1) {
        for (std::uint32_t lane = 0; lane < inst.lanes; ++lane) fill_segment(inst, pass, lane, slice);
        continue;
      }
      // Lanes within a slice only read blocks from finished slices.
      std::vector<std::jthread> pool;
      pool.reserve(workers - 1);
      for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back([&inst, pass, slice, w, workers] {
          for (std::uint32_t lane = w; lane < inst.lanes; lane += workers) fill_segment(inst, pass, lane, slice);
        });
      }
      for (std::uint32_t lane = 0; lane < inst.lanes; lane += workers) fill_segment(inst, pass, lane, slice);
    }
  }
}

void validate(std::size_t out_len, std::span<const std::uint8_t> password, std::span<const std::uint8_t> salt,
              const Params& params) {
  auto reject = [](const char* why) { throw Error(ErrorCode::kKdfFailure, std::string("Argon2id rejected parameters: ") + why); };
  if (out_len < 16 || out_len > 0xFFFFFFFFull) reject("tag length out of range");
  if (password.size() > 0xFFFFFFFFull) reject("password too long");
  if (salt.size() < kMinSaltBytes) reject("salt shorter than 8 bytes");
  if (salt.size() > 0xFFFFFFFFull) reject("salt too long");
  if (params.lanes < 1 || params.lanes > kMaxLanes) reject("lanes out of range");
  if (params.iterations < 1) reject("iterations must be at least 1");
  if (static_cast<std::uint64_t>(params.memory_kib) < 8ull * params.lanes) reject("memory below 8 KiB per lane");
}

}  // namespace

void hash_id(std::span<std::uint8_t> out, std::span<const std::uint8_t> password, std::span<const std::uint8_t> salt,
             const Params& params, unsigned threads) {
  validate(out.size(), password, salt, params);

  Instance inst;
  inst.passes = params.iterations;
  inst.lanes = params.lanes;
  inst.segment_length = params.memory_kib / (params.lanes * kSyncPoints);
  inst.lane_length = inst.segment_length * kSyncPoints;
  inst.memory_blocks = inst.lane_length * params.lanes;
  inst.memory.resize(inst.memory_blocks);

  // H0 followed by the 8 bytes (block index, lane) used to seed each lane.
  SecretArray<kPrehashBytes + 8> seed_store;
  const auto seed = seed_store.mutable_bytes();
  {
    std::array<std::uint8_t, 24> header{};
    store32(header.data() + 0, params.lanes);
    store32(header.data() + 4, static_cast<std::uint32_t>(out.size()));
    store32(header.data() + 8, params.memory_kib);
    store32(header.data() + 12, params.iterations);
    store32(header.data() + 16, kVersion);
    store32(header.data() + 20, kTypeId);
    std::array<std::uint8_t, 4> pwd_len{}, salt_len{}, empty_len{};
    store32(pwd_len.data(), static_cast<std::uint32_t>(password.size()));
    store32(salt_len.data(), static_cast<std::uint32_t>(salt.size()));
    hash::blake2b(std::span(seed).first<kPrehashBytes>(),
                  {header, pwd_len, password, salt_len, salt, empty_len, empty_len});
  }

  SecretArray<kBlockBytes> block_store;
  const auto block_bytes = block_store.mutable_bytes();
  for (std::uint32_t lane = 0; lane < params.lanes; ++lane) {
    for (std::uint32_t j = 0; j < 2; ++j) {
      store32(seed.data() + kPrehashBytes, j);
      store32(seed.data() + kPrehashBytes + 4, lane);
      blake2b_long(block_bytes, seed);
      Block& b = inst.memory[static_cast<std::size_t>(lane) * inst.lane_length + j];
      for (std::size_t k = 0; k < kBlockWords; ++k) b.v[k] = load64(block_bytes.data() + 8 * k);
    }
  }
  seed_store.wipe();

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  fill_memory(inst, threads);

  WipedBlock final_store{inst.memory[inst.lane_length - 1]};
  Block& final_block = final_store.block;
  for (std::uint32_t lane = 1; lane < params.lanes; ++lane) {
    const Block& last = inst.memory[static_cast<std::size_t>(lane) * inst.lane_length + inst.lane_length - 1];
    for (std::size_t k = 0; k < kBlockWords; ++k) final_block.v[k] ^= last.v[k];
  }
  for (std::size_t k = 0; k < kBlockWords; ++k) store64(block_bytes.data() + 8 * k, final_block.v[k]);
  blake2b_long(out, block_bytes);
}

}  // namespace layerkey::argon2
