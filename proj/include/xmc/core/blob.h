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

#ifndef XMC_CORE_BLOB_H_
#define XMC_CORE_BLOB_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "xmc/core/embedding.h"

namespace xmc {

// On-disk layout of an embedding blob (all integers little-endian):
//
//   offset  size  field
//   0       4     magic "XMEC"
//   4       4     version (u32) = 1
//   8       4     dim (u32)
//   12      8     count (u64)
//   20      4*dim*count  binary32 values, row-major
inline constexpr char kBlobMagic[4] = {'X', 'M', 'E', 'C'};
inline constexpr std::uint32_t kBlobVersion = 1;
inline constexpr std::size_t kBlobHeaderSize = 20;

// Location of one vector: a blob file name (relative to the manifest
// directory) and the row ordinal inside it.
struct BlobRef {
  std::string blob;
  std::uint64_t row = 0;

  friend bool operator==(const BlobRef&, const BlobRef&) = default;
};

// Raw rows of a blob. Rows are not validated as embeddings here because a
// blob may also carry probability vectors.
struct BlobContents {
  std::uint32_t dim = 0;
  std::vector<float> data;

  std::uint64_t count() const { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const float> row(std::uint64_t i) const {
    return std::span<const float>(data).subspan(i * dim, dim);
  }
};

// Writes `vectors` to `path`, narrowing each component to binary32. Returns
// the ordinal of every input vector inside the new file, keyed by input
// position. Throws DimMismatch on an empty or ragged input, IoError when the
// file cannot be written.
std::vector<BlobRef> WriteEmbeddingBlob(std::span<const Embedding> vectors,
                                        const std::filesystem::path& path);

// Throws BlobError on a missing file, bad magic, unsupported version, or a
// size that disagrees with the header.
BlobContents ReadBlob(const std::filesystem::path& path);

// ReadBlob followed by embedding validation of every row.
std::vector<Embedding> ReadEmbeddingBlob(const std::filesystem::path& path);

}  // namespace xmc

#endif  // XMC_CORE_BLOB_H_
