#include "semicrf/utf8.h"

namespace semicrf {

std::uint32_t utf8_decode(const std::string& s, std::size_t& pos) {
    unsigned char b0 = static_cast<unsigned char>(s[pos]);
    std::size_t len;
    std::uint32_t cp;
    if (b0 < 0x80) {
        ++pos;
        return b0;
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
        ++pos;
        return 0xFFFD;
    }
    if (pos + len > s.size()) {
        ++pos;
        return 0xFFFD;
    }
    for (std::size_t i = 1; i < len; ++i) {
        unsigned char b = static_cast<unsigned char>(s[pos + i]);
        if ((b & 0xC0) != 0x80) {
            ++pos;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    pos += len;
    return cp;
}

std::string utf8_encode(std::uint32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
}

std::vector<std::string> utf8_chars(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t start = pos;
        utf8_decode(s, pos);
        out.push_back(s.substr(start, pos - start));
    }
    return out;
}

std::string normalize_fullwidth(const std::string& utf8_char) {
    std::size_t pos = 0;
    std::uint32_t cp = utf8_decode(utf8_char, pos);
    if (pos != utf8_char.size()) {
        return utf8_char;
    }
    if (cp >= 0xFF01 && cp <= 0xFF5E) {
        return std::string(1, static_cast<char>(cp - 0xFEE0));
    }
    if (cp == 0x3000) {
        return " ";
    }
    return utf8_char;
}

bool is_space_codepoint(std::uint32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\r' || cp == '\n' || cp == '\v' ||
           cp == '\f' || cp == 0x3000;
}

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> words;
    std::string cur;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t start = pos;
        std::uint32_t cp = utf8_decode(line, pos);
        if (is_space_codepoint(cp)) {
            if (!cur.empty()) {
                words.push_back(cur);
                cur.clear();
            }
        } else {
            cur.append(line, start, pos - start);
        }
    }
    if (!cur.empty()) {
        words.push_back(cur);
    }
    return words;
}

}
