#include "ibb/context.hpp"

#include <stdexcept>

#include "ibb/error.hpp"

namespace ibb {

ContextShape::ContextShape(unsigned kappa) : kappa_(kappa), symbols_((kappa + 1) / 2) {
  if (kappa < kMinKappa || kappa > kMaxKappa)
    throw ConfigError("kappa must be in [" + std::to_string(kMinKappa) + ", " + std::to_string(kMaxKappa) +
                      "], got " + std::to_string(kappa));
}

std::uint64_t ContextShape::from_string(const std::string& s) const {
  std::uint64_t ctx = 0;
  for (unsigned i = 0; i < symbols_; ++i) {
    Symbol c = Symbol::A;
    if (i < s.size()) {
      auto b = base_from_char(s[i]);
      if (!b) throw std::invalid_argument("context symbol must be a base");
      c = *b;
    }
    ctx = (ctx << 2) | code(c);
  }
  return ctx;
}

std::string ContextShape::to_string(std::uint64_t context) const {
  std::string s(symbols_, 'A');
  for (unsigned i = 0; i < symbols_; ++i)
    s[i] = to_char(from_code(static_cast<unsigned>(context >> (2 * (symbols_ - 1 - i)))));
  return s;
}

}  // namespace ibb
