#ifndef TRAWL_SRC_PARSE_CALL_HPP
#define TRAWL_SRC_PARSE_CALL_HPP

// Internal helper: parse config strings of the form "name(arg1,arg2,...)".

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "trawl/errors.hpp"

namespace trawl::detail {

struct Call {
  std::string name;
  std::vector<double> args;
};

inline std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_number(const std::string& tok, const std::string& ctx) {
  const std::string t = strip(tok);
  if (t.empty()) throw ConfigError("empty number in '" + ctx + "'");
  try {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw ConfigError("trailing characters in number '" + t + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("bad number '" + t + "' in '" + ctx + "'");
  }
}

/// Parses "name", "name()", or "name(a,b,...)"; also accepts ';' as a
/// separator between the first argument and the rest (fourier syntax).
inline Call parse_call(const std::string& text) {
  const std::string s = strip(text);
  const auto open = s.find('(');
  Call call;
  if (open == std::string::npos) {
    call.name = s;
    return call;
  }
  if (s.empty() || s.back() != ')') {
    throw ConfigError("unbalanced parentheses in '" + s + "'");
  }
  call.name = strip(s.substr(0, open));
  const std::string inner = s.substr(open + 1, s.size() - open - 2);
  if (strip(inner).empty()) return call;
  std::string tok;
  for (char ch : inner) {
    if (ch == ',' || ch == ';') {
      call.args.push_back(parse_number(tok, s));
      tok.clear();
    } else {
      tok += ch;
    }
  }
  call.args.push_back(parse_number(tok, s));
  return call;
}

}  // namespace trawl::detail

#endif  // TRAWL_SRC_PARSE_CALL_HPP
