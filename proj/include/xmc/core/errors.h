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

#ifndef XMC_CORE_ERRORS_H_
#define XMC_CORE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace xmc {

// Every failure raised by the engine derives from Error, so callers that only
// need "did it work" can catch one type. The subclasses map onto the typed
// failures of each operation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define XMC_DEFINE_ERROR(Name)              \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(std::string(#Name ": ") + what) {} \
  }

// Ingestion.
XMC_DEFINE_ERROR(MalformedManifest);
XMC_DEFINE_ERROR(IntegrityError);
XMC_DEFINE_ERROR(BlobError);
XMC_DEFINE_ERROR(IoError);

// Vector math and scoring.
XMC_DEFINE_ERROR(DimMismatch);
XMC_DEFINE_ERROR(InvalidEmbedding);
XMC_DEFINE_ERROR(EmptyInput);
XMC_DEFINE_ERROR(EmptyReferences);
XMC_DEFINE_ERROR(InvalidArgument);

// Tampering.
XMC_DEFINE_ERROR(InvalidCoordinate);
XMC_DEFINE_ERROR(NoCandidates);
XMC_DEFINE_ERROR(MissingSimilarityEmbedding);

// Evaluation.
XMC_DEFINE_ERROR(InsufficientRelevant);

#undef XMC_DEFINE_ERROR

}  // namespace xmc

#endif  // XMC_CORE_ERRORS_H_
