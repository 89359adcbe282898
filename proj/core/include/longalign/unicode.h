// Copyright 2026 The longalign Authors.
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

#ifndef LONGALIGN_UNICODE_H_
#define LONGALIGN_UNICODE_H_

#include <string>
#include <string_view>

namespace longalign {

// Characters are compared as unicode code points. All text enters the
// library through Utf8ToCodePoints, which also applies NFC normalization so
// that differently encoded but canonically equivalent input compares equal.

// Decodes UTF-8 and NFC-normalizes. Throws FormatError on invalid UTF-8.
std::u32string Utf8ToCodePoints(std::string_view utf8);

// Decodes UTF-8 without normalization.
std::u32string DecodeUtf8(std::string_view utf8);

std::string CodePointsToUtf8(std::u32string_view text);

std::u32string NormalizeNfc(std::u32string_view text);

// Unicode White_Space property.
bool IsWhitespace(char32_t c);

}  // namespace longalign

#endif  // LONGALIGN_UNICODE_H_
