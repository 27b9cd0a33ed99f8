#include "layerkey/kdf.hpp"

#include <string>

#include "layerkey/argon2.hpp"
#include "layerkey/error.hpp"
#include "layerkey/hash.hpp"

namespace layerkey {

KdfParams KdfParams::custom(std::uint32_t memory_kib, std::uint32_t iterations, std::uint32_t lanes) {
  KdfParams params{memory_kib, iterations, lanes, kKeyBytes};
  params.validate();
  return params;
}

void KdfParams::validate() const {
  if (out_len != kKeyBytes) throw Error(ErrorCode::kInvalidArgument, "output length must be 32 bytes");
  if (lanes < 1) throw Error(ErrorCode::kInvalidArgument, "lanes must be at least 1");
  if (iterations < 1) throw Error(ErrorCode::kInvalidArgument, "iterations must be at least 1");
  if (static_cast<std::uint64_t>(memory_kib) < 8ull * lanes) {
    throw Error(ErrorCode::kInvalidArgument, "memory must be at least 8 KiB per lane");
  }
}

LayerSequence::LayerSequence(std::vector<NormalizedText> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one layer is required");
}

LayerSequence LayerSequence::from_raw(std::initializer_list<std::string_view> raw) {
  return from_raw(std::span<const std::string_view>(raw.begin(), raw.size()));
}

LayerSequence LayerSequence::from_raw(std::span<const std::string_view> raw) {
  std::vector<NormalizedText> layers;
  layers.reserve(raw.size());
  for (auto layer : raw) layers.push_back(normalize(layer));
  return LayerSequence(std::move(layers));
}

SaltBytes make_salt(const NormalizedText& layer) {
  const auto bytes = layer.bytes();
  if (bytes.size() >= kMinSaltBytes) return SaltBytes(SecureBytes(bytes.begin(), bytes.end()), false);
  SecureBytes digest(kHashedSaltBytes);
  hash::blake2b(digest, {bytes});
  return SaltBytes(std::move(digest), true);
}

DerivedKey argon2id_step(std::span<const std::uint8_t> key_material, const SaltBytes& salt, const KdfParams& params,
                         unsigned threads) {
  if (key_material.empty()) throw Error(ErrorCode::kInvalidArgument, "key material must not be empty");
  if (params.out_len != kKeyBytes) throw Error(ErrorCode::kKdfFailure, "Argon2id output length must be 32 bytes");
  DerivedKey key;
  argon2::hash_id(key.mutable_bytes(), key_material, salt.bytes(),
                  {params.memory_kib, params.iterations, params.lanes}, threads);
  return key;
}

DerivedKey derive_chain(const MasterSecret& master, const LayerSequence& layers, const KdfParams& params,
                        unsigned threads) {
  DerivedKey key = argon2id_step(master.bytes(), make_salt(layers[0]), params, threads);
  for (std::size_t i = 1; i < layers.size(); ++i) {
    // Move-assignment wipes the temporary, the old key is overwritten in place.
    key = argon2id_step(key.bytes(), make_salt(layers[i]), params, threads);
  }
  return key;
}

}  // namespace layerkey
