#include "adpasmc/signal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace adpasmc {

namespace {

struct Constant { double c; };
struct Sine { double amplitude, omega, phase; };
struct Polynomial { std::vector<double> coeffs; };
struct SmoothStep { double t0, duration, from, to; };
struct Piecewise { std::vector<double> starts; std::vector<Signal> parts; };
struct Sum { std::vector<Signal> terms; };
struct Scale { double k; Signal inner; };

}  // namespace

struct Signal::Node {
  std::variant<Constant, Sine, Polynomial, SmoothStep, Piecewise, Sum, Scale> data;
};

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Signal::Signal() : Signal(zero()) {}

Signal Signal::zero() { return constant(0.0); }

Signal Signal::constant(double c) {
  return Signal(std::make_shared<const Node>(Node{Constant{c}}));
}

Signal Signal::sine(double amplitude, double omega, double phase) {
  return Signal(std::make_shared<const Node>(Node{Sine{amplitude, omega, phase}}));
}

Signal Signal::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("poly: needs at least one coefficient");
  return Signal(std::make_shared<const Node>(Node{Polynomial{std::move(coeffs)}}));
}

Signal Signal::smooth_step(double t0, double duration, double from, double to) {
  if (!(duration >= 0.0)) throw std::invalid_argument("step: duration must be >= 0");
  return Signal(std::make_shared<const Node>(Node{SmoothStep{t0, duration, from, to}}));
}

Signal Signal::piecewise(std::vector<std::pair<double, Signal>> segments) {
  if (segments.empty()) throw std::invalid_argument("piecewise: needs at least one segment");
  Piecewise pw;
  for (auto& [start, sig] : segments) {
    if (!pw.starts.empty() && !(start > pw.starts.back())) {
      throw std::invalid_argument("piecewise: breakpoints must be strictly increasing");
    }
    pw.starts.push_back(start);
    pw.parts.push_back(std::move(sig));
  }
  return Signal(std::make_shared<const Node>(Node{std::move(pw)}));
}

Signal Signal::operator+(const Signal& other) const {
  return Signal(std::make_shared<const Node>(Node{Sum{{*this, other}}}));
}

Signal Signal::scaled(double k) const {
  return Signal(std::make_shared<const Node>(Node{Scale{k, *this}}));
}

double Signal::eval(double t, int order) const {
  struct Visitor {
    double t;
    int order;
    double operator()(const Constant& c) const { return order == 0 ? c.c : 0.0; }
    double operator()(const Sine& s) const {
      const double arg = s.omega * t + s.phase;
      switch (order) {
        case 0: return s.amplitude * std::sin(arg);
        case 1: return s.amplitude * s.omega * std::cos(arg);
        default: return -s.amplitude * s.omega * s.omega * std::sin(arg);
      }
    }
    double operator()(const Polynomial& p) const {
      double acc = 0.0;
      for (std::size_t i = p.coeffs.size(); i-- > static_cast<std::size_t>(order);) {
        double c = p.coeffs[i];
        for (int k = 0; k < order; ++k) c *= static_cast<double>(i - k);
        acc = acc * t + c;
      }
      return acc;
    }
    double operator()(const SmoothStep& s) const {
      const double span = s.to - s.from;
      if (s.duration == 0.0) return order == 0 ? (t < s.t0 ? s.from : s.to) : 0.0;
      const double x = (t - s.t0) / s.duration;
      if (x <= 0.0) return order == 0 ? s.from : 0.0;
      if (x >= 1.0) return order == 0 ? s.to : 0.0;
      switch (order) {
        case 0: return s.from + span * x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
        case 1: return span * 30.0 * x * x * (1.0 - x) * (1.0 - x) / s.duration;
        default:
          return span * 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x) / (s.duration * s.duration);
      }
    }
    double operator()(const Piecewise& p) const {
      const auto it = std::upper_bound(p.starts.begin(), p.starts.end(), t);
      if (it == p.starts.begin()) return 0.0;
      return p.parts[static_cast<std::size_t>(it - p.starts.begin()) - 1].eval(t, order);
    }
    double operator()(const Sum& s) const {
      double acc = 0.0;
      for (const auto& term : s.terms) acc += term.eval(t, order);
      return acc;
    }
    double operator()(const Scale& s) const { return s.k * s.inner.eval(t, order); }
  };
  return std::visit(Visitor{t, order}, node_->data);
}

std::string Signal::to_string() const {
  struct Visitor {
    std::string operator()(const Constant& c) const {
      return c.c == 0.0 ? "zero" : "const(" + format_double(c.c) + ")";
    }
    std::string operator()(const Sine& s) const {
      return "sine(" + format_double(s.amplitude) + ", " + format_double(s.omega) + ", " +
             format_double(s.phase) + ")";
    }
    std::string operator()(const Polynomial& p) const {
      std::string out = "poly(";
      for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        if (i) out += ", ";
        out += format_double(p.coeffs[i]);
      }
      return out + ")";
    }
    std::string operator()(const SmoothStep& s) const {
      return "step(" + format_double(s.t0) + ", " + format_double(s.duration) + ", " +
             format_double(s.from) + ", " + format_double(s.to) + ")";
    }
    std::string operator()(const Piecewise& p) const {
      std::string out = "piecewise(";
      for (std::size_t i = 0; i < p.starts.size(); ++i) {
        if (i) out += ", ";
        out += format_double(p.starts[i]) + ": " + p.parts[i].to_string();
      }
      return out + ")";
    }
    std::string operator()(const Sum& s) const {
      std::string out;
      for (std::size_t i = 0; i < s.terms.size(); ++i) {
        if (i) out += " + ";
        out += s.terms[i].to_string();
      }
      return out;
    }
    std::string operator()(const Scale& s) const {
      return "scale(" + format_double(s.k) + ", " + s.inner.to_string() + ")";
    }
  };
  return std::visit(Visitor{}, node_->data);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Signal parse_all() {
    Signal s = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("signal '" + std::string(text_) + "': " + what + " at column " +
                                std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Signal parse_sum() {
    Signal acc = parse_primary();
    for (;;) {
      if (accept('+')) {
        acc = acc + parse_primary();
      } else if (accept('-')) {
        acc = acc + parse_primary().scaled(-1.0);
      } else {
        return acc;
      }
    }
  }

  Signal parse_primary() {
    const std::size_t at = pos_;
    const std::string name = identifier();
    if (name == "zero") return Signal::zero();
    if (name.empty()) fail("expected a signal primitive");
    expect('(');
    Signal out;
    if (name == "const") {
      out = Signal::constant(number());
    } else if (name == "sine") {
      const double a = number();
      expect(',');
      const double w = number();
      expect(',');
      const double ph = number();
      out = Signal::sine(a, w, ph);
    } else if (name == "poly") {
      std::vector<double> c{number()};
      while (accept(',')) c.push_back(number());
      out = Signal::polynomial(std::move(c));
    } else if (name == "step") {
      const double t0 = number();
      expect(',');
      const double dur = number();
      expect(',');
      const double from = number();
      expect(',');
      const double to = number();
      if (dur < 0.0) fail("step duration must be >= 0");
      out = Signal::smooth_step(t0, dur, from, to);
    } else if (name == "piecewise") {
      std::vector<std::pair<double, Signal>> segs;
      do {
        const double start = number();
        expect(':');
        segs.emplace_back(start, parse_sum());
      } while (accept(','));
      for (std::size_t i = 1; i < segs.size(); ++i) {
        if (!(segs[i].first > segs[i - 1].first)) fail("piecewise breakpoints must increase");
      }
      out = Signal::piecewise(std::move(segs));
    } else if (name == "scale") {
      const double k = number();
      expect(',');
      out = parse_sum().scaled(k);
    } else {
      pos_ = at;
      fail("unknown primitive '" + name + "'");
    }
    expect(')');
    return out;
  }

  // numeric expression: term {(+|-) term}
  double number() {
    double v = term();
    for (;;) {
      if (accept('+')) v += term();
      else if (accept('-')) v -= term();
      else return v;
    }
  }

  double term() {
    double v = factor();
    for (;;) {
      if (accept('*')) v *= factor();
      else if (accept('/')) v /= factor();
      else return v;
    }
  }

  double factor() {
    if (accept('-')) return -factor();
    if (accept('(')) {
      const double v = number();
      expect(')');
      return v;
    }
    skip_ws();
    if (text_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return M_PI;
    }
    double v = 0.0;
    const char* first = text_.data() + pos_;
    const auto res = std::from_chars(first, text_.data() + text_.size(), v);
    if (res.ec != std::errc() || res.ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Signal Signal::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace adpasmc
