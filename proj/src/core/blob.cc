// Copyright 2026 The xmc Authors
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

#include "xmc/core/blob.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "xmc/core/errors.h"

namespace xmc {
namespace {

template <typename T>
void PutLe(std::vector<unsigned char>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<unsigned char>((value >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T GetLe(const unsigned char* p) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(p[i]) << (8 * i);
  }
  return value;
}

}  // namespace

std::vector<BlobRef> WriteEmbeddingBlob(std::span<const Embedding> vectors,
                                        const std::filesystem::path& path) {
  if (vectors.empty()) throw DimMismatch("cannot write an empty blob");
  const std::size_t dim = vectors.front().dim();
  for (const Embedding& v : vectors) {
    if (v.dim() != dim) {
      throw DimMismatch("blob rows must share one dim: " + std::to_string(dim) +
                        " vs " + std::to_string(v.dim()));
    }
  }

  std::vector<unsigned char> bytes;
  bytes.reserve(kBlobHeaderSize + vectors.size() * dim * 4);
  bytes.insert(bytes.end(), std::begin(kBlobMagic), std::end(kBlobMagic));
  PutLe<std::uint32_t>(bytes, kBlobVersion);
  PutLe<std::uint32_t>(bytes, static_cast<std::uint32_t>(dim));
  PutLe<std::uint64_t>(bytes, vectors.size());
  for (const Embedding& v : vectors) {
    for (double x : v.values()) {
      if (std::abs(x) > std::numeric_limits<float>::max()) {
        throw DimMismatch("component exceeds binary32 range");
      }
      PutLe<std::uint32_t>(bytes,
                           std::bit_cast<std::uint32_t>(static_cast<float>(x)));
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());

  std::vector<BlobRef> refs;
  refs.reserve(vectors.size());
  const std::string name = path.filename().string();
  for (std::uint64_t i = 0; i < vectors.size(); ++i) refs.push_back({name, i});
  return refs;
}

BlobContents ReadBlob(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BlobError("missing blob " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < kBlobHeaderSize) {
    throw BlobError("truncated header in " + path.string());
  }
  if (std::memcmp(bytes.data(), kBlobMagic, 4) != 0) {
    throw BlobError("bad magic in " + path.string());
  }
  const auto version = GetLe<std::uint32_t>(bytes.data() + 4);
  if (version != kBlobVersion) {
    throw BlobError("unsupported version " + std::to_string(version) + " in " +
                    path.string());
  }
  BlobContents blob;
  blob.dim = GetLe<std::uint32_t>(bytes.data() + 8);
  const auto count = GetLe<std::uint64_t>(bytes.data() + 12);
  if (blob.dim == 0) throw BlobError("zero dim in " + path.string());
  const std::uint64_t payload = bytes.size() - kBlobHeaderSize;
  if (count > payload / 4 / blob.dim || payload != count * blob.dim * 4) {
    throw BlobError("payload size disagrees with header in " + path.string());
  }
  blob.data.resize(count * blob.dim);
  const unsigned char* p = bytes.data() + kBlobHeaderSize;
  for (std::size_t i = 0; i < blob.data.size(); ++i, p += 4) {
    blob.data[i] = std::bit_cast<float>(GetLe<std::uint32_t>(p));
  }
  return blob;
}

std::vector<Embedding> ReadEmbeddingBlob(const std::filesystem::path& path) {
  const BlobContents blob = ReadBlob(path);
  std::vector<Embedding> out;
  out.reserve(blob.count());
  for (std::uint64_t i = 0; i < blob.count(); ++i) {
    auto row = blob.row(i);
    try {
      out.emplace_back(std::vector<double>(row.begin(), row.end()));
    } catch (const InvalidEmbedding& e) {
      throw BlobError("row " + std::to_string(i) + " of " + path.string() +
                      ": " + e.what());
    }
  }
  return out;
}

}  // namespace xmc
