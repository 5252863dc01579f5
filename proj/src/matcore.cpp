// Copyright 2026 The zenodae Authors
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

#include "zenodae/matcore.hpp"

#include <cstdio>
#include <ostream>

namespace zenodae {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kRank: return "rank";
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kStructure: return "structure";
    case ErrorKind::kIndex: return "index";
    case ErrorKind::kConsistency: return "consistency";
    case ErrorKind::kGap: return "gap";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kInvariant: return "invariant";
  }
  return "unknown";
}

Settings& settings() {
  static Settings s;
  return s;
}

void dump_triplets(std::ostream& os, const std::string& header, const DenseMatrix<Complex>& m) {
  os << header << '\n';
  char buf[96];
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      const Complex v = m(r, c);
      if (v == Complex(0.0)) continue;
      std::snprintf(buf, sizeof buf, "%lld %lld %.17g %.17g\n", static_cast<long long>(r + 1),
                    static_cast<long long>(c + 1), v.real(), v.imag());
      os << buf;
    }
}

}  // namespace zenodae
