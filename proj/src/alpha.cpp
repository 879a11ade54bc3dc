#include "rtb/alpha.hpp"

#include <charconv>
#include <string>

#include "rtb/error.hpp"
#include "rtb/io.hpp"

namespace rtb {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::Config, "empty integer");
  BigInt v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw Error(ErrorKind::Config, "bad integer '" + std::string(text) + "'");
    v = v * 10 + (c - '0');
    if (v > (BigInt{1} << 100)) throw Error(ErrorKind::Config, "integer too large");
  }
  return v;
}

int parse_int(std::string_view text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Config, "bad integer '" + std::string(text) + "'");
  }
  return v;
}

Quad to_quad(BigInt v) { return Quad(static_cast<__float128>(v)); }

}  // namespace

AlphaSpec parse_alpha(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  AlphaSpec spec;
  if (head == "golden" && colon == std::string_view::npos) {
    spec = GoldenExactAlpha{};
  } else if (head == "rational") {
    const auto slash = tail.find('/');
    if (slash == std::string_view::npos) throw Error(ErrorKind::Config, "rational alpha needs M/N");
    spec = RationalAlpha{parse_bigint(tail.substr(0, slash)), parse_bigint(tail.substr(slash + 1))};
  } else if (head == "golden-convergent") {
    spec = GoldenConvergentAlpha{parse_int(tail)};
  } else if (head == "liouville") {
    spec = LiouvilleAlpha{parse_int(tail)};
  } else if (head == "rad") {
    spec = LiteralAlpha{parse_double(tail)};
  } else {
    throw Error(ErrorKind::Config, "unknown alpha spec '" + std::string(text) + "'");
  }
  validate_alpha(spec);
  return spec;
}

std::string format_alpha(const AlphaSpec& spec) {
  return std::visit(
      Overloaded{
          [](const RationalAlpha& r) { return "rational:" + to_string(r.M) + "/" + to_string(r.N); },
          [](const GoldenConvergentAlpha& g) { return "golden-convergent:" + std::to_string(g.n); },
          [](const GoldenExactAlpha&) { return std::string("golden"); },
          [](const LiouvilleAlpha& l) { return "liouville:" + std::to_string(l.k); },
          [](const LiteralAlpha& l) { return "rad:" + format_double(l.value); },
      },
      spec);
}

void validate_alpha(const AlphaSpec& spec) {
  std::visit(Overloaded{
                 [](const RationalAlpha& r) {
                   if (!(r.M > 0 && r.M < r.N)) {
                     throw Error(ErrorKind::Config, "rational alpha requires 0 < M/N < 1");
                   }
                   if (gcd(r.M, r.N) != 1) {
                     throw Error(ErrorKind::Config, "rational alpha must be in lowest terms");
                   }
                 },
                 [](const GoldenConvergentAlpha& g) {
                   if (g.n < 2 || g.n + 1 > kMaxFibIndex) {
                     throw Error(ErrorKind::Config, "golden convergent index outside 2..89");
                   }
                 },
                 [](const GoldenExactAlpha&) {},
                 [](const LiouvilleAlpha& l) {
                   if (l.k < 1 || l.k > kMaxLiouvilleTerms) {
                     throw Error(ErrorKind::Config, "liouville terms outside 1..4");
                   }
                 },
                 [](const LiteralAlpha& l) {
                   if (!(l.value > 0.0) || !(l.value < pi<double>())) {
                     throw Error(ErrorKind::Config, "literal alpha must lie in (0, pi)");
                   }
                 },
             },
             spec);
}

std::optional<RationalAlpha> rational_form(const AlphaSpec& spec) {
  return std::visit(Overloaded{
                        [](const RationalAlpha& r) -> std::optional<RationalAlpha> { return r; },
                        [](const GoldenConvergentAlpha& g) -> std::optional<RationalAlpha> {
                          const Convergent c = golden_convergent(g.n);
                          return RationalAlpha{c.M, c.N};
                        },
                        [](const GoldenExactAlpha&) -> std::optional<RationalAlpha> { return std::nullopt; },
                        [](const LiouvilleAlpha& l) -> std::optional<RationalAlpha> {
                          return liouville_alpha(l.k);
                        },
                        [](const LiteralAlpha&) -> std::optional<RationalAlpha> { return std::nullopt; },
                    },
                    spec);
}

Quad golden_phi_quad() {
  using boost::multiprecision::sqrt;
  return (sqrt(Quad(5)) - 1) / 2;
}

template <>
Quad evaluate_alpha<Quad>(const AlphaSpec& spec) {
  validate_alpha(spec);
  if (const auto* lit = std::get_if<LiteralAlpha>(&spec)) return Quad(lit->value);
  if (std::holds_alternative<GoldenExactAlpha>(spec)) return pi<Quad>() * golden_phi_quad();
  const RationalAlpha r = *rational_form(spec);
  return pi<Quad>() * to_quad(r.M) / to_quad(r.N);
}

template <>
double evaluate_alpha<double>(const AlphaSpec& spec) {
  if (const auto* lit = std::get_if<LiteralAlpha>(&spec)) {
    validate_alpha(spec);
    return lit->value;
  }
  return to_double(evaluate_alpha<Quad>(spec));
}

}  // namespace rtb
