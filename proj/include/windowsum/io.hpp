// Copyright 2026 The windowsum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WINDOWSUM_IO_HPP_
#define WINDOWSUM_IO_HPP_

#include <string>

#include "json.hpp"
#include "windowsum/coloring.hpp"
#include "windowsum/matrix.hpp"

// JSON and text formats. Parsing errors surface as FormatError.
namespace windowsum::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json MatrixToJson(const IntMatrix& m);
IntMatrix MatrixFromJson(const nlohmann::json& j);

/// {"window": [h, w], "S": [[...]], "U": [[...]], "L": [[...]]}, L optional.
nlohmann::json InstanceToJson(const ReconstructionInstance& inst);
ReconstructionInstance InstanceFromJson(const nlohmann::json& j);

/// A bare matrix, or an object carrying it under "A".
IntMatrix SolutionFromJson(const nlohmann::json& j);

/// {"n": count, "edges": [[u, v], ...]} with 0-based vertices.
coloring::Graph GraphFromJson(const nlohmann::json& j);
/// "c" comments, one "p edge n m" header, then "e u v" lines (1-based).
coloring::Graph GraphFromDimacs(const std::string& text);
/// Dispatches on the first non-blank character: '{' means JSON.
coloring::Graph ParseGraph(const std::string& text);
nlohmann::json GraphToJson(const coloring::Graph& g);

/// Graph, vertex slot map and gadget program; the shift and instances are
/// rebuilt on load.
nlohmann::json RecordToJson(const coloring::ReductionRecord& record);
coloring::ReductionRecord RecordFromJson(const nlohmann::json& j);

/// Indented output that keeps arrays of scalars (matrix rows) on one line.
std::string Pretty(const nlohmann::json& j);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& content);
nlohmann::json ParseJson(const std::string& text, const std::string& what);

}  // namespace windowsum::io

#endif  // WINDOWSUM_IO_HPP_
