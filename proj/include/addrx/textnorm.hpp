#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace addrx {

// UTF-8 <-> Unicode scalar values. Invalid byte sequences decode to U+FFFD.
std::u32string utf8_decode(const std::string& s);
std::string utf8_encode(const std::u32string& s);

char32_t fold_char(char32_t c);  // simple case fold, Latin ranges

bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_upper(char32_t c);

// Case fold only; length-preserving over scalar values.
std::u32string case_fold(const std::u32string& s);
std::string case_fold_utf8(const std::string& s);

// Canonical comparison form for city names and free text matching:
// compose a/o/u + combining diaeresis, case fold, fold "ß" to "ss",
// trim and collapse runs of whitespace to a single space.
std::string fold_text(const std::string& s);

std::string trim(const std::string& s);
std::string collapse_whitespace(const std::string& s);

}  // namespace addrx
