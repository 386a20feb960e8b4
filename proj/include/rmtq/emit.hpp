// Copyright 2026 The rmtq authors
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

#ifndef RMTQ_EMIT_HPP
#define RMTQ_EMIT_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace rmtq {

enum class EmitFormat { Csv, JsonLines };

EmitFormat emit_format_from_string(const std::string& s);

/// One typed cell of a result row. Doubles are printed with %.17g so that
/// replayed runs are byte-identical; CSV uses '.' decimals regardless of
/// locale.
using Field = std::variant<std::int64_t, double, std::string>;

std::string field_to_string(const Field& f);

/// Tabular result writer. CSV always writes the header row (even with no
/// data); json-lines writes one object per row with keys in column order.
class ResultWriter {
 public:
  ResultWriter(std::ostream& os, EmitFormat format, std::vector<std::string> columns);

  void row(const std::vector<Field>& values);
  int rows_written() const { return rows_; }

 private:
  std::ostream& os_;
  EmitFormat format_;
  std::vector<std::string> columns_;
  int rows_ = 0;
};

}  // namespace rmtq

#endif  // RMTQ_EMIT_HPP
