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

#ifndef XMC_CORE_MANIFEST_H_
#define XMC_CORE_MANIFEST_H_

#include <filesystem>

#include "xmc/core/corpus.h"

namespace xmc {

inline constexpr char kManifestFileName[] = "manifest.json";
inline constexpr char kManifestFormat[] = "xmc-manifest";
inline constexpr int kManifestVersion = 1;

struct LoadOptions {
  // Overrides the manifest's own per_source_cap when set.
  std::optional<std::size_t> per_source_cap;
};

// Loads and validates a corpus. `path` is either the corpus directory or the
// manifest.json inside it; blob references resolve relative to that
// directory.
//
// Throws MalformedManifest (JSON syntax or schema), IntegrityError (dangling
// ids, dim mismatch, bad probability vector, zero-norm vector, exceeded
// per-source cap) or BlobError (missing or corrupt sidecar).
Corpus LoadManifest(const std::filesystem::path& path,
                    const LoadOptions& options = {});

// Writes `corpus` as manifest.json plus one blob per embedding role into
// `dir`, creating it if needed. LoadManifest(dir) reproduces the corpus
// exactly when every embedding component is representable in binary32.
void WriteManifest(const Corpus& corpus, const std::filesystem::path& dir);

}  // namespace xmc

#endif  // XMC_CORE_MANIFEST_H_
