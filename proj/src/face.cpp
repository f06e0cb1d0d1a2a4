#include "vtman/face.hpp"

#include <cctype>

#include "vtman/error.hpp"

namespace vtman {

Face make_face(std::initializer_list<int> vertices) {
  return make_face(std::span<const int>(vertices.begin(), vertices.size()));
}

Face make_face(std::span<const int> vertices) {
  Face f = 0;
  for (int v : vertices) {
    if (v < 1 || v > kMaxVertices) throw InputError("vertex label out of range: " + std::to_string(v));
    f |= vertex_bit(v);
  }
  return f;
}

std::vector<int> vertices_of(Face f) {
  std::vector<int> out;
  out.reserve(face_size(f));
  while (f) {
    out.push_back(std::countr_zero(f) + 1);
    f &= f - 1;
  }
  return out;
}

bool lex_less(Face a, Face b) {
  Face diff = a ^ b;
  if (diff == 0) return false;
  Face low = diff & (~diff + 1);
  Face above = ~((low << 1) - 1);
  if (a & low) {
    // b lacks this vertex: either b continues with a larger one, or b ended.
    return (b & above) != 0;
  }
  // a lacks it; a < b only if a ran out first.
  return (a & above) == 0;
}

std::string format_face(Face f) {
  std::string out;
  for (int v : vertices_of(f)) {
    if (v < 10) {
      out += static_cast<char>('0' + v);
    } else {
      if (!out.empty()) out += ' ';
      out += std::to_string(v);
    }
  }
  return out;
}

Face parse_compact_face(const std::string& text) {
  Face f = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw InputError("bad face token: " + text);
    int v = 0;
    // A run of digits preceded by whitespace and >= 10 is one label; inside
    // a leading digit run every digit is its own label.
    bool spaced = i > 0 && std::isspace(static_cast<unsigned char>(text[i - 1]));
    if (spaced) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      f |= make_face({v});
    } else {
      f |= make_face({text[i++] - '0'});
    }
  }
  return f;
}

std::string format_face_spaced(Face f) {
  std::string out;
  for (int v : vertices_of(f)) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace vtman
