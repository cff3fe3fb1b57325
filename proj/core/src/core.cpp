#include "dirmono/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "dirmono/error.hpp"

namespace dirmono {

namespace {

void check_dim(std::size_t n) {
  if (n < 2) {
    throw DimensionError("dimension must be at least 2, got " + std::to_string(n));
  }
  if (n > kMaxDim) {
    throw DimensionError("dimension " + std::to_string(n) + " exceeds the supported maximum " +
                         std::to_string(kMaxDim));
  }
}

}  // namespace

UnitPoint::UnitPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  check_dim(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double c = coords_[i];
    if (!(c >= 0.0 && c <= 1.0)) {
      std::ostringstream msg;
      msg << "coordinate " << i + 1 << " = " << c << " is outside [0,1]";
      throw DomainError(msg.str());
    }
  }
}

UnitPoint::UnitPoint(std::initializer_list<double> coords)
    : UnitPoint(std::vector<double>(coords)) {}

bool UnitPoint::precedes(const UnitPoint& other) const {
  if (dim() != other.dim()) throw DimensionError("point dimensions differ");
  for (std::size_t i = 0; i < dim(); ++i) {
    if (coords_[i] > other.coords_[i]) return false;
  }
  return true;
}

Direction Direction::make(std::span<const int> signs) {
  check_dim(signs.size());
  Direction d;
  d.signs_.assign(signs.begin(), signs.end());
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == -1) {
      d.neg_.push_back(i);
      d.neg_mask_ |= 1u << i;
    } else if (signs[i] == 1) {
      d.pos_.push_back(i);
    } else {
      throw MalformedDirection("direction entry " + std::to_string(i + 1) + " is " +
                               std::to_string(signs[i]) + ", expected -1 or +1");
    }
  }
  return d;
}

Direction Direction::make(std::initializer_list<int> signs) {
  return make(std::span<const int>(signs.begin(), signs.size()));
}

Direction Direction::from_mask(std::size_t dim, std::uint32_t neg_mask) {
  check_dim(dim);
  std::vector<int> signs(dim);
  for (std::size_t i = 0; i < dim; ++i) signs[i] = ((neg_mask >> i) & 1u) ? -1 : 1;
  return make(signs);
}

Direction Direction::parse(const std::string& text) {
  std::vector<int> signs;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(),
                               [](unsigned char c) { return std::isspace(c); }),
                token.end());
    if (token == "+" || token == "+1" || token == "1") {
      signs.push_back(1);
    } else if (token == "-" || token == "-1") {
      signs.push_back(-1);
    } else {
      throw MalformedDirection("malformed direction token '" + token + "' in '" + text + "'");
    }
  }
  if (!text.empty() && text.back() == ',') {
    throw MalformedDirection("malformed direction '" + text + "': trailing comma");
  }
  return make(signs);
}

std::uint32_t Direction::positive_mask() const noexcept {
  const std::uint32_t all = signs_.size() >= 32 ? ~0u : ((1u << signs_.size()) - 1u);
  return all & ~neg_mask_;
}

std::string Direction::to_string() const { return "(" + to_token() + ")"; }

std::string Direction::to_token() const {
  std::string out;
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (i) out += ',';
    out += signs_[i] > 0 ? '+' : '-';
  }
  return out;
}

std::vector<Direction> all_directions(std::size_t dim) {
  check_dim(dim);
  std::vector<Direction> out;
  out.reserve(std::size_t{1} << dim);
  // Lexicographic with '+' first: bit (dim-1-i) of the counter drives coordinate i.
  for (std::uint32_t k = 0; k < (1u << dim); ++k) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if ((k >> (dim - 1 - i)) & 1u) mask |= 1u << i;
    }
    out.push_back(Direction::from_mask(dim, mask));
  }
  return out;
}

Box::Box(UnitPoint lower, UnitPoint upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (!lower_.precedes(upper_)) throw DomainError("box lower corner must not exceed upper corner");
}

const char* to_string(DependenceNotion notion) {
  return notion == DependenceNotion::Increasing ? "I" : "D";
}

UnitPoint join_direction(const Direction& d, const UnitPoint& v, const UnitPoint& w) {
  if (d.dim() != v.dim() || v.dim() != w.dim()) {
    throw DimensionError("join_direction: direction and points must share a dimension");
  }
  std::vector<double> out(d.dim());
  for (std::size_t k = 0; k < d.dim(); ++k) {
    out[k] = d.is_negative(k) ? std::min(v[k], w[k]) : std::max(v[k], w[k]);
  }
  return UnitPoint(std::move(out));
}

double box_volume(const PointFunction& eval, const Box& box) {
  const std::size_t n = box.dim();
  std::vector<double> vertex(n);
  double total = 0.0;
  for (std::uint32_t pick = 0; pick < (1u << n); ++pick) {
    // bit k set: take the lower coordinate on axis k
    int lowers = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if ((pick >> k) & 1u) {
        vertex[k] = box.lower()[k];
        ++lowers;
      } else {
        vertex[k] = box.upper()[k];
      }
    }
    const double value = eval(vertex);
    total += (lowers % 2 == 0) ? value : -value;
  }
  return total;
}

}  // namespace dirmono
