#include "addrx/textnorm.hpp"

#include <cctype>

namespace addrx {

std::u32string utf8_decode(const std::string& s) {
    std::u32string out;
    out.reserve(s.size());
    size_t i = 0;
    const size_t n = s.size();
    while (i < n) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        char32_t cp = 0xFFFD;
        size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        if (len > 1) {
            if (i + len > n) {
                out.push_back(0xFFFD);
                ++i;
                continue;
            }
            bool ok = true;
            for (size_t k = 1; k < len; ++k) {
                const unsigned char bk = static_cast<unsigned char>(s[i + k]);
                if ((bk & 0xC0) != 0x80) {
                    ok = false;
                    break;
                }
                cp = (cp << 6) | (bk & 0x3F);
            }
            if (!ok) {
                out.push_back(0xFFFD);
                ++i;
                continue;
            }
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(const std::u32string& s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t c : s) {
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        } else if (c < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        } else if (c < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (c >> 12)));
            out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (c >> 18)));
            out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        }
    }
    return out;
}

char32_t fold_char(char32_t c) {
    if (c >= U'A' && c <= U'Z')
        return c + 0x20;
    // Latin-1 supplement uppercase (À-Þ), skipping the multiplication sign.
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7)
        return c + 0x20;
    // Latin Extended-A pairs alternate upper/lower.
    if (c >= 0x100 && c <= 0x137 && (c % 2) == 0)
        return c + 1;
    if (c >= 0x139 && c <= 0x148 && (c % 2) == 1)
        return c + 1;
    if (c >= 0x14A && c <= 0x177 && (c % 2) == 0)
        return c + 1;
    if (c == 0x178)
        return 0xFF;  // Ÿ -> ÿ
    if (c >= 0x179 && c <= 0x17E && (c % 2) == 1)
        return c + 1;
    return c;
}

bool is_letter(char32_t c) {
    if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'))
        return true;
    if (c >= 0xC0 && c <= 0x17F && c != 0xD7 && c != 0xF7)
        return true;
    return false;
}

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_upper(char32_t c) { return is_letter(c) && fold_char(c) != c; }

std::u32string case_fold(const std::u32string& s) {
    std::u32string out;
    out.reserve(s.size());
    for (char32_t c : s)
        out.push_back(fold_char(c));
    return out;
}

std::string case_fold_utf8(const std::string& s) {
    return utf8_encode(case_fold(utf8_decode(s)));
}

namespace {

bool is_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == 0xA0;
}

// Compose base vowel + combining diaeresis (U+0308) into the precomposed
// umlaut, so NFD input compares equal to the composed fixtures.
char32_t compose_umlaut(char32_t base) {
    switch (base) {
        case U'a': return 0xE4;
        case U'o': return 0xF6;
        case U'u': return 0xFC;
        case U'A': return 0xC4;
        case U'O': return 0xD6;
        case U'U': return 0xDC;
        default: return 0;
    }
}

}  // namespace

std::string fold_text(const std::string& s) {
    const std::u32string in = utf8_decode(s);
    std::u32string out;
    out.reserve(in.size());
    for (size_t i = 0; i < in.size(); ++i) {
        char32_t c = in[i];
        if (i + 1 < in.size() && in[i + 1] == 0x308) {
            if (char32_t composed = compose_umlaut(c)) {
                c = composed;
                ++i;
            }
        }
        c = fold_char(c);
        if (c == 0xDF) {  // ß -> ss
            out.push_back(U's');
            out.push_back(U's');
            continue;
        }
        if (is_space(c)) {
            if (!out.empty() && out.back() != U' ')
                out.push_back(U' ');
            continue;
        }
        out.push_back(c);
    }
    while (!out.empty() && out.back() == U' ')
        out.pop_back();
    return utf8_encode(out);
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

std::string collapse_whitespace(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!out.empty() && out.back() != ' ')
                out.push_back(' ');
        } else {
            out.push_back(ch);
        }
    }
    if (!out.empty() && out.back() == ' ')
        out.pop_back();
    return out;
}

}  // namespace addrx
