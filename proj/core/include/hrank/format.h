// Copyright 2026 The hrank Authors.
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

#ifndef HRANK_FORMAT_H_
#define HRANK_FORMAT_H_

#include <string>

namespace hrank {

// Locale-independent, 17 significant digits, shortest of fixed/scientific.
// Parsing the result with strtod gives back the same double.
std::string format_double(double value);

}  // namespace hrank

#endif  // HRANK_FORMAT_H_
