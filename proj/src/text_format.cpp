#include "spart/text_format.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "spart/errors.hpp"

namespace spart {

std::string to_text(const SpatialPartition& p) {
  std::string s = "P{m=" + std::to_string(p.levels()) + "; up=\"" + p.up().str() + "\"; low=\"" +
                  p.low().str() + "\"; blocks=[";
  bool first_block = true;
  for (const auto& block : p.blocks()) {
    if (!first_block) s += ",";
    first_block = false;
    s += "[";
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(block[i].column) + "." + std::to_string(block[i].level);
    }
    s += "]";
  }
  return s + "]}";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  SpatialPartition partition() {
    skip_space();
    expect('P');
    expect('{');
    keyword("m");
    expect('=');
    int m = integer();
    expect(';');
    keyword("up");
    expect('=');
    ColorWord up = word();
    expect(';');
    keyword("low");
    expect('=');
    ColorWord low = word();
    expect(';');
    keyword("blocks");
    expect('=');
    expect('[');
    std::vector<std::vector<Point>> blocks;
    if (!peek(']')) {
      do {
        blocks.push_back(block());
      } while (accept(','));
    }
    expect(']');
    expect('}');
    return make_partition(m, std::move(up), std::move(low), blocks);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SyntaxError(what, line, column);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void keyword(std::string_view kw) {
    skip_space();
    if (text_.substr(pos_, kw.size()) != kw) fail("expected '" + std::string(kw) + "'");
    pos_ += kw.size();
  }

  int integer() {
    skip_space();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  ColorWord word() {
    expect('"');
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
    if (pos_ >= text_.size()) fail("unterminated color word");
    std::string_view body = text_.substr(start, pos_ - start);
    ++pos_;
    try {
      return ColorWord::parse(body);
    } catch (const SyntaxError& e) {
      pos_ = start + static_cast<std::size_t>(e.column() - 1);
      fail("color words use 'w' and 'b'");
    }
  }

  std::vector<Point> block() {
    expect('[');
    std::vector<Point> points;
    do {
      int c = integer();
      if (text_.substr(pos_, 1) != ".") fail("expected '.' between column and level");
      ++pos_;
      int l = integer();
      points.push_back({c, l});
    } while (accept(','));
    expect(']');
    return points;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SpatialPartition parse_partition(std::string_view text) {
  Parser parser(text);
  SpatialPartition p = parser.partition();
  if (!parser.at_end()) throw SyntaxError("trailing input after partition", 1, 1);
  return p;
}

std::vector<SpatialPartition> parse_partitions(std::string_view text) {
  Parser parser(text);
  std::vector<SpatialPartition> out;
  while (!parser.at_end()) out.push_back(parser.partition());
  return out;
}

nlohmann::json to_json(const SpatialPartition& p) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& block : p.blocks()) {
    nlohmann::json b = nlohmann::json::array();
    for (const auto& pt : block) b.push_back({pt.column, pt.level});
    blocks.push_back(std::move(b));
  }
  return {{"m", p.levels()}, {"up", p.up().str()}, {"low", p.low().str()}, {"blocks", std::move(blocks)}};
}

SpatialPartition partition_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::vector<Point>> blocks;
    for (const auto& b : j.at("blocks")) {
      std::vector<Point> points;
      for (const auto& pt : b) points.push_back({pt.at(0).get<int>(), pt.at(1).get<int>()});
      blocks.push_back(std::move(points));
    }
    return make_partition(j.at("m").get<int>(), ColorWord::parse(j.at("up").get<std::string>()),
                          ColorWord::parse(j.at("low").get<std::string>()), blocks);
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("bad partition JSON: ") + e.what(), 1, 1);
  }
}

std::string render_ascii(const SpatialPartition& p) {
  auto block_name = [](int label) {
    static const std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
    if (label < static_cast<int>(alphabet.size())) return std::string(1, alphabet[static_cast<std::size_t>(label)]);
    return std::to_string(label);
  };
  const int width = p.block_count() > 52 ? 4 : 3;
  auto cell = [width](const std::string& s) {
    std::string out = s;
    out.resize(static_cast<std::size_t>(width), ' ');
    return out;
  };
  std::ostringstream os;
  auto row = [&](const std::string& head, auto&& content) {
    os << head;
    for (std::size_t i = head.size(); i < 9; ++i) os << ' ';
    for (int c = 1; c <= p.columns(); ++c) {
      if (c == p.upper_columns() + 1) os << "| ";
      os << cell(content(c));
    }
    os << '\n';
  };
  row("column", [](int c) { return std::to_string(c); });
  row("color", [&](int c) { return std::string(1, to_char(p.column_color(c))); });
  for (int l = 1; l <= p.levels(); ++l)
    row("level " + std::to_string(l), [&](int c) { return block_name(p.label({c, l})); });
  return os.str();
}

}  // namespace spart
