#include "bicens/censdata.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "bicens/errors.hpp"

namespace bicens {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double* out) {
  if (s == "inf" || s == "+inf" || s == "Inf" || s == "+Inf") {
    *out = kInf;
    return true;
  }
  if (s == "-inf" || s == "-Inf") {
    *out = -kInf;
    return true;
  }
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last && std::isfinite(*out);
}

bool parse_int(const std::string& s, std::int64_t* out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool looks_like_header(const std::vector<std::string>& fields) {
  double ignored;
  return !fields.empty() && !parse_double(fields[0], &ignored);
}

}  // namespace

std::vector<double> Dataset::frequencies() const {
  std::vector<double> f;
  f.reserve(rectangles.size());
  for (const auto& r : rectangles) f.push_back(static_cast<double>(r.freq));
  return f;
}

void validate(const CensoringRectangle& r) {
  if (std::isnan(r.l1) || std::isnan(r.r1) || std::isnan(r.l2) || std::isnan(r.r2))
    throw ValidationError("rectangle bound is NaN");
  if (r.r1 == -kInf || r.r2 == -kInf || r.l1 == kInf || r.l2 == kInf)
    throw ValidationError("rectangle side is empty");
  if (r.l1 > r.r1) throw ValidationError("L1 > R1");
  if (r.l2 > r.r2) throw ValidationError("L2 > R2");
  if ((r.l1_open && r.l1 == r.r1) || (r.l2_open && r.l2 == r.r2))
    throw ValidationError("half-open side is empty");
  if (r.freq <= 0) throw ValidationError("freq must be positive");
}

Dataset parse_rectangle_csv(std::istream& in) {
  Dataset data;
  data.kind = DataKind::kCase2;
  std::string line;
  std::size_t line_no = 0;
  bool first_record = true;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (first_record && looks_like_header(fields)) {
      first_record = false;
      continue;
    }
    first_record = false;
    if (fields.size() != 5)
      throw ParseError("expected 5 fields L1,R1,L2,R2,freq, got " + std::to_string(fields.size()),
                       line_no);
    CensoringRectangle r;
    double* bounds[4] = {&r.l1, &r.r1, &r.l2, &r.r2};
    for (int k = 0; k < 4; ++k) {
      if (!parse_double(fields[k], bounds[k]))
        throw ParseError("malformed number '" + fields[k] + "'", line_no);
    }
    if (!parse_int(fields[4], &r.freq))
      throw ParseError("malformed frequency '" + fields[4] + "'", line_no);
    try {
      validate(r);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
    data.n += r.freq;
    data.rectangles.push_back(r);
  }
  return data;
}

Dataset parse_rectangle_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_rectangle_csv(in);
}

std::string format_bound(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char trial[32];
    std::snprintf(trial, sizeof trial, "%.*g", prec, v);
    if (std::strtod(trial, nullptr) == v) return trial;
  }
  return buf;
}

void write_rectangle_csv(std::ostream& out, const Dataset& data, bool with_freq) {
  out << (with_freq ? "L1,R1,L2,R2,freq\n" : "L1,R1,L2,R2\n");
  for (const auto& r : data.rectangles) {
    if (r.l1_open || r.l2_open)
      throw ValidationError("half-open rectangles cannot be written as rectangle CSV");
    out << format_bound(r.l1) << ',' << format_bound(r.r1) << ',' << format_bound(r.l2) << ','
        << format_bound(r.r2);
    if (with_freq) out << ',' << r.freq;
    out << '\n';
  }
}

std::vector<CurrentStatusObs> parse_cs_csv(std::istream& in) {
  std::vector<CurrentStatusObs> obs;
  std::string line;
  std::size_t line_no = 0;
  bool first_record = true;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (first_record && looks_like_header(fields)) {
      first_record = false;
      continue;
    }
    first_record = false;
    if (fields.size() != 4)
      throw ParseError("expected 4 fields t,u,delta1,delta2", line_no);
    CurrentStatusObs o;
    std::int64_t d1 = 0, d2 = 0;
    if (!parse_double(fields[0], &o.t) || !parse_double(fields[1], &o.u) ||
        !std::isfinite(o.t) || !std::isfinite(o.u))
      throw ParseError("malformed observation time", line_no);
    if (!parse_int(fields[2], &d1) || !parse_int(fields[3], &d2) || d1 < 0 || d1 > 1 || d2 < 0 ||
        d2 > 1)
      throw ParseError("indicators must be 0 or 1", line_no);
    o.delta1 = d1 == 1;
    o.delta2 = d2 == 1;
    obs.push_back(o);
  }
  return obs;
}

void write_cs_csv(std::ostream& out, const std::vector<CurrentStatusObs>& obs) {
  out << "t,u,delta1,delta2\n";
  for (const auto& o : obs)
    out << format_bound(o.t) << ',' << format_bound(o.u) << ',' << int(o.delta1) << ','
        << int(o.delta2) << '\n';
}

Dataset cs_to_rectangles(const std::vector<CurrentStatusObs>& obs) {
  Dataset data;
  data.kind = DataKind::kCurrentStatus;
  using Key = std::tuple<double, double, bool, bool>;
  std::map<Key, std::size_t> index;
  for (const auto& o : obs) {
    const Key key{o.t, o.u, o.delta1, o.delta2};
    auto it = index.find(key);
    if (it != index.end()) {
      ++data.rectangles[it->second].freq;
    } else {
      CensoringRectangle r;
      if (o.delta1) {
        r.l1 = -kInf;
        r.r1 = o.t;
      } else {
        r.l1 = o.t;
        r.r1 = kInf;
        r.l1_open = true;
      }
      if (o.delta2) {
        r.l2 = -kInf;
        r.r2 = o.u;
      } else {
        r.l2 = o.u;
        r.r2 = kInf;
        r.l2_open = true;
      }
      r.freq = 1;
      index.emplace(key, data.rectangles.size());
      data.rectangles.push_back(r);
    }
    ++data.n;
  }
  return data;
}

}  // namespace bicens
