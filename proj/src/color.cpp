#include "spart/color.hpp"

#include "spart/errors.hpp"

namespace spart {

char to_char(Color c) noexcept { return c == Color::white ? 'w' : 'b'; }

ColorWord ColorWord::parse(std::string_view text) {
  static constexpr std::string_view kWhiteGlyph = "∘";
  static constexpr std::string_view kBlackGlyph = "•";
  std::vector<Color> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (ch == 'w' || ch == 'W') {
      letters.push_back(Color::white);
      ++i;
    } else if (ch == 'b' || ch == 'B') {
      letters.push_back(Color::black);
      ++i;
    } else if (text.substr(i, kWhiteGlyph.size()) == kWhiteGlyph) {
      letters.push_back(Color::white);
      i += kWhiteGlyph.size();
    } else if (text.substr(i, kBlackGlyph.size()) == kBlackGlyph) {
      letters.push_back(Color::black);
      i += kBlackGlyph.size();
    } else {
      throw SyntaxError("unexpected character in color word", 1, static_cast<int>(i) + 1);
    }
  }
  return ColorWord(std::move(letters));
}

ColorWord ColorWord::uniform(Color c, std::size_t length) {
  return ColorWord(std::vector<Color>(length, c));
}

ColorWord ColorWord::conjugate() const {
  std::vector<Color> out(letters_.rbegin(), letters_.rend());
  for (auto& c : out) c = spart::conjugate(c);
  return ColorWord(std::move(out));
}

ColorWord ColorWord::concat(const ColorWord& other) const {
  std::vector<Color> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return ColorWord(std::move(out));
}

ColorWord ColorWord::slice(std::size_t from, std::size_t count) const {
  return ColorWord(std::vector<Color>(letters_.begin() + from, letters_.begin() + from + count));
}

bool ColorWord::all(Color c) const noexcept {
  for (auto l : letters_)
    if (l != c) return false;
  return true;
}

std::string ColorWord::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (auto c : letters_) s.push_back(to_char(c));
  return s;
}

ColorWord alternating_word(std::size_t length) {
  std::vector<Color> out(length);
  for (std::size_t i = 0; i < length; ++i) out[i] = (i % 2 == 0) ? Color::white : Color::black;
  return ColorWord(std::move(out));
}

std::vector<ColorWord> all_words(std::size_t length) {
  std::vector<ColorWord> out;
  std::size_t total = std::size_t{1} << length;
  out.reserve(total);
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<Color> letters(length);
    for (std::size_t i = 0; i < length; ++i)
      letters[i] = ((mask >> (length - 1 - i)) & 1U) ? Color::black : Color::white;
    out.emplace_back(std::move(letters));
  }
  return out;
}

}  // namespace spart
