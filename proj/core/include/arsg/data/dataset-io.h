// arsg/data/dataset-io.h

// Copyright 2026  The arsg Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ARSG_DATA_DATASET_IO_H_
#define ARSG_DATA_DATASET_IO_H_

#include <string>
#include <vector>

#include "arsg/decoder/alphabet.h"
#include "arsg/nn/tensor.h"

namespace arsg {

struct Utterance {
  std::string id;
  std::string text;         // normalized transcript
  std::vector<int> labels;  // EOS-terminated
  Tensor frames;            // [T x d]
};

/// Feature file: uint32 rows, uint32 cols (little-endian), then rows * cols
/// little-endian float32 values in row-major order.
void WriteFeatureFile(const std::string& path, const Tensor& frames);
Tensor ReadFeatureFile(const std::string& path);

/// Manifest: one "id<TAB>transcript<TAB>feature-path" line per utterance.
/// Relative feature paths are resolved against the manifest's directory.
/// Features go to `feature_dir/<id>.feat`.
void WriteDataset(const std::string& manifest_path,
                  const std::string& feature_dir,
                  const std::vector<Utterance>& utts);
std::vector<Utterance> ReadDataset(const std::string& manifest_path,
                                   const Alphabet& alphabet);

}  // namespace arsg

#endif  // ARSG_DATA_DATASET_IO_H_
