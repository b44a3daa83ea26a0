#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace spart {

enum class Color : std::uint8_t { white = 0, black = 1 };

constexpr Color conjugate(Color c) noexcept {
  return c == Color::white ? Color::black : Color::white;
}

char to_char(Color c) noexcept;

// A finite word over {white, black}. Text form uses 'w' and 'b'.
class ColorWord {
 public:
  ColorWord() = default;
  ColorWord(std::initializer_list<Color> letters) : letters_(letters) {}
  explicit ColorWord(std::vector<Color> letters) : letters_(std::move(letters)) {}

  // Accepts 'w'/'b' as well as the UTF-8 glyphs for white and black circles.
  static ColorWord parse(std::string_view text);
  static ColorWord uniform(Color c, std::size_t length);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Color operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Color>& letters() const noexcept { return letters_; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  // Reverses the order and flips every letter.
  ColorWord conjugate() const;
  ColorWord concat(const ColorWord& other) const;
  ColorWord slice(std::size_t from, std::size_t count) const;
  void push_back(Color c) { letters_.push_back(c); }

  bool all(Color c) const noexcept;
  std::string str() const;

  friend bool operator==(const ColorWord&, const ColorWord&) = default;
  friend auto operator<=>(const ColorWord& a, const ColorWord& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Color> letters_;
};

inline ColorWord operator+(const ColorWord& a, const ColorWord& b) {
  return a.concat(b);
}

// Alternating word (white black)^(length/2), starting with white.
ColorWord alternating_word(std::size_t length);

// All words of the given length in lexicographic order (white < black).
std::vector<ColorWord> all_words(std::size_t length);

}  // namespace spart
