#include "semicross/workspace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace semicross {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
  throw ParseError("line " + std::to_string(lineno) + ": " + msg);
}

std::int64_t parse_int(const std::string& s, int lineno) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) fail(lineno, "bad integer: " + s);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    fail(lineno, "bad integer: " + s);
  }
}

Scalar parse_scalar_at(const std::string& s, int lineno) {
  try {
    return scalar_from_string(s);
  } catch (const std::exception& e) {
    fail(lineno, std::string("bad scalar: ") + e.what());
  }
}

}  // namespace

const ModelFunction& Workspace::function(const std::string& name) const {
  auto it = functions.find(name);
  if (it == functions.end()) throw ParseError("unknown function: " + name);
  return it->second;
}

const AlgebraElement& Workspace::element(const std::string& name) const {
  auto it = elements.find(name);
  if (it == elements.end()) throw ParseError("unknown element: " + name);
  return it->second;
}

Workspace parse_workspace(std::istream& in) {
  struct RawEnd {
    std::string label;
    int lineno;
  };
  struct RawChain {
    std::string name;
    RawEnd minus, plus;
  };
  std::vector<CycleDesc> cycles;
  std::vector<RawChain> raw_chains;
  std::vector<LimitDesc> limits;

  struct FuncLine {
    std::vector<std::string> toks;
    int lineno;
  };
  std::vector<std::pair<std::string, std::vector<FuncLine>>> raw_functions;
  std::vector<std::pair<std::string, std::vector<FuncLine>>> raw_elements;

  enum class Section { None, Limits, Cycles, Chains, Functions, Elements };
  Section section = Section::None;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(strip_comment(line));
    if (t.empty()) continue;
    if (t == "limits:") {
      section = Section::Limits;
      continue;
    }
    if (t == "cycles:") {
      section = Section::Cycles;
      continue;
    }
    if (t == "chains:") {
      section = Section::Chains;
      continue;
    }
    if (t == "functions:") {
      section = Section::Functions;
      continue;
    }
    if (t == "elements:") {
      section = Section::Elements;
      continue;
    }
    auto toks = tokens(t);
    switch (section) {
      case Section::None:
        fail(lineno, "content before any section header");
      case Section::Limits:
        if (toks.size() != 1) fail(lineno, "a limit line is just a name");
        limits.push_back({toks[0]});
        break;
      case Section::Cycles:
        if (toks.size() != 2) fail(lineno, "cycle lines read: name length");
        cycles.push_back({toks[0], parse_int(toks[1], lineno)});
        break;
      case Section::Chains:
        if (toks.size() != 3) fail(lineno, "chain lines read: name minus_end plus_end");
        raw_chains.push_back({toks[0], {toks[1], lineno}, {toks[2], lineno}});
        break;
      case Section::Functions:
        if (toks[0] == "function") {
          if (toks.size() != 2) fail(lineno, "function lines read: function name");
          raw_functions.emplace_back(toks[1], std::vector<FuncLine>{});
        } else {
          if (raw_functions.empty()) fail(lineno, "value line outside a function");
          raw_functions.back().second.push_back({toks, lineno});
        }
        break;
      case Section::Elements:
        if (toks[0] == "element") {
          if (toks.size() != 2) fail(lineno, "element lines read: element name");
          raw_elements.emplace_back(toks[1], std::vector<FuncLine>{});
        } else {
          if (raw_elements.empty()) fail(lineno, "coefficient line outside an element");
          raw_elements.back().second.push_back({toks, lineno});
        }
        break;
    }
  }

  std::vector<ChainDesc> chains;
  auto resolve_end = [&](const RawEnd& e) {
    if (e.label == "inf") return ChainEnd::make_infinite();
    for (int i = 0; i < (int)limits.size(); ++i)
      if (limits[i].name == e.label) return ChainEnd::to_limit(i);
    throw DanglingLimitRef("line " + std::to_string(e.lineno) +
                           ": chain end references unknown limit " + e.label);
  };
  for (const auto& rc : raw_chains)
    chains.push_back({rc.name, resolve_end(rc.minus), resolve_end(rc.plus)});

  Workspace ws;
  ws.system = DynamicalSystem::create(std::move(cycles), std::move(chains), std::move(limits));
  const DynamicalSystem& sys = *ws.system;

  for (auto& [name, lines] : raw_functions) {
    if (ws.functions.count(name)) throw ParseError("duplicate function name: " + name);
    ModelFunction f(ws.system);
    for (const FuncLine& fl : lines) {
      const auto& tk = fl.toks;
      if (tk[0] == "chain" && tk.size() == 5 && tk[2] == "tails") {
        int c = sys.chain_index(tk[1]);
        if (c < 0) fail(fl.lineno, "unknown chain: " + tk[1]);
        f.set_chain_tails(c, parse_scalar_at(tk[3], fl.lineno), parse_scalar_at(tk[4], fl.lineno));
      } else if (tk[0] == "chain" && tk.size() == 6 && tk[2] == "at" && tk[4] == "=") {
        int c = sys.chain_index(tk[1]);
        if (c < 0) fail(fl.lineno, "unknown chain: " + tk[1]);
        f.set_chain_exception(c, parse_int(tk[3], fl.lineno), parse_scalar_at(tk[5], fl.lineno));
      } else if (tk[0] == "cycle" && tk.size() == 6 && tk[2] == "at" && tk[4] == "=") {
        int c = sys.cycle_index(tk[1]);
        if (c < 0) fail(fl.lineno, "unknown cycle: " + tk[1]);
        f.set_cycle_value(c, parse_int(tk[3], fl.lineno), parse_scalar_at(tk[5], fl.lineno));
      } else if (tk[0] == "limit" && tk.size() == 4 && tk[2] == "=") {
        int l = sys.limit_index(tk[1]);
        if (l < 0) fail(fl.lineno, "unknown limit: " + tk[1]);
        f.set_limit_value(l, parse_scalar_at(tk[3], fl.lineno));
      } else {
        fail(fl.lineno, "unrecognized function value line");
      }
    }
    C0Report rep = f.validate();
    if (!rep.ok()) {
      const C0Issue& issue = rep.issues.front();
      std::string end = std::string(issue.plus_end ? "plus" : "minus") + " end of chain " +
                        sys.chains()[issue.chain].name;
      if (issue.kind == C0Issue::Kind::VanishingViolation)
        throw ParseError("function " + name + ": nonzero tail on the infinite " + end);
      throw ParseError("function " + name + ": tail does not match the limit value at the " + end);
    }
    ws.functions.emplace(name, std::move(f));
  }

  for (auto& [name, lines] : raw_elements) {
    if (ws.elements.count(name)) throw ParseError("duplicate element name: " + name);
    AlgebraElement e(ws.system);
    for (const FuncLine& fl : lines) {
      const auto& tk = fl.toks;
      if (tk.size() != 2) fail(fl.lineno, "coefficient lines read: degree function-name");
      std::int64_t deg = parse_int(tk[0], fl.lineno);
      if (deg < 0) fail(fl.lineno, "degrees live in Z_+");
      auto it = ws.functions.find(tk[1]);
      if (it == ws.functions.end()) fail(fl.lineno, "unknown function: " + tk[1]);
      if (!e.fourier_coefficient((int)deg).is_zero())
        fail(fl.lineno, "duplicate degree " + tk[0] + " in element " + name);
      e.set_coefficient((int)deg, it->second);
    }
    ws.elements.emplace(name, std::move(e));
  }
  return ws;
}

Workspace parse_workspace_text(const std::string& text) {
  std::istringstream is(text);
  return parse_workspace(is);
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_workspace(in);
}

std::string serialize_workspace(const Workspace& ws) {
  const DynamicalSystem& sys = *ws.system;
  std::ostringstream os;
  if (!sys.limits().empty()) {
    os << "limits:\n";
    for (const auto& l : sys.limits()) os << "  " << l.name << "\n";
  }
  if (!sys.cycles().empty()) {
    os << "cycles:\n";
    for (const auto& c : sys.cycles()) os << "  " << c.name << " " << c.length << "\n";
  }
  if (!sys.chains().empty()) {
    os << "chains:\n";
    for (const auto& c : sys.chains()) {
      auto end_name = [&](const ChainEnd& e) {
        return e.infinite ? std::string("inf") : sys.limits()[e.limit].name;
      };
      os << "  " << c.name << " " << end_name(c.minus_end) << " " << end_name(c.plus_end) << "\n";
    }
  }
  if (!ws.functions.empty()) {
    os << "functions:\n";
    for (const auto& [name, f] : ws.functions) {
      os << "  function " << name << "\n";
      for (std::size_t c = 0; c < sys.chains().size(); ++c) {
        const ChainValues& cv = f.chain_values()[c];
        if (!cv.minus_tail.is_zero() || !cv.plus_tail.is_zero())
          os << "    chain " << sys.chains()[c].name << " tails "
             << scalar_to_string(cv.minus_tail) << " " << scalar_to_string(cv.plus_tail) << "\n";
        for (const auto& [j, v] : cv.exceptions)
          os << "    chain " << sys.chains()[c].name << " at " << j << " = "
             << scalar_to_string(v) << "\n";
      }
      for (std::size_t c = 0; c < sys.cycles().size(); ++c)
        for (const auto& [i, v] : f.cycle_values()[c])
          os << "    cycle " << sys.cycles()[c].name << " at " << i << " = "
             << scalar_to_string(v) << "\n";
      for (std::size_t l = 0; l < sys.limits().size(); ++l)
        if (!f.limit_values()[l].is_zero())
          os << "    limit " << sys.limits()[l].name << " = "
             << scalar_to_string(f.limit_values()[l]) << "\n";
    }
  }
  if (!ws.elements.empty()) {
    os << "elements:\n";
    for (const auto& [name, e] : ws.elements) {
      os << "  element " << name << "\n";
      for (const auto& [deg, f] : e.coefficients()) {
        // Coefficients refer to named functions; emit the first matching name.
        std::string fname;
        for (const auto& [fn, fv] : ws.functions)
          if (fv == f) {
            fname = fn;
            break;
          }
        if (fname.empty()) throw ParseError("element " + name + " uses an unnamed coefficient");
        os << "    " << deg << " " << fname << "\n";
      }
    }
  }
  return os.str();
}

Point parse_point(const DynamicalSystem& sys, const std::string& text) {
  auto open = text.find('[');
  if (open == std::string::npos) {
    int l = sys.limit_index(text);
    if (l < 0) throw ParseError("unknown limit point: " + text);
    return Point::limit(l);
  }
  if (text.back() != ']') throw ParseError("bad point syntax: " + text);
  std::string name = text.substr(0, open);
  std::int64_t idx = parse_int(text.substr(open + 1, text.size() - open - 2), 0);
  int c = sys.chain_index(name);
  if (c >= 0) return Point::chain(c, idx);
  c = sys.cycle_index(name);
  if (c >= 0) return Point::cycle(c, idx);
  throw ParseError("unknown chain or cycle: " + name);
}

std::string norm_to_report_string(const NormValue& n) {
  if (n.value) return rational_to_string(*n.value);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", n.to_double());
  return buf;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string where_to_string(ChainWhere w) {
  switch (w) {
    case ChainWhere::None:
      return "none";
    case ChainWhere::MinusTail:
      return "minus_tail";
    case ChainWhere::PlusTail:
      return "plus_tail";
    case ChainWhere::Exception:
      return "exception";
  }
  return "?";
}

ChainWhere where_from_string(const std::string& s) {
  if (s == "none") return ChainWhere::None;
  if (s == "minus_tail") return ChainWhere::MinusTail;
  if (s == "plus_tail") return ChainWhere::PlusTail;
  if (s == "exception") return ChainWhere::Exception;
  throw ParseError("bad locus kind: " + s);
}

std::string why_to_string(VanishFailure::Why w) {
  switch (w) {
    case VanishFailure::Why::RecurrentPoint:
      return "recurrent";
    case VanishFailure::Why::NonWanderingPoint:
      return "non_wandering";
    case VanishFailure::Why::AccumulationE0:
      return "accumulation_e0";
  }
  return "?";
}

VanishFailure::Why why_from_string(const std::string& s) {
  if (s == "recurrent") return VanishFailure::Why::RecurrentPoint;
  if (s == "non_wandering") return VanishFailure::Why::NonWanderingPoint;
  if (s == "accumulation_e0") return VanishFailure::Why::AccumulationE0;
  throw ParseError("bad vanishing kind: " + s);
}

std::map<std::string, std::string> key_values(const std::vector<std::string>& toks,
                                              std::size_t from) {
  std::map<std::string, std::string> kv;
  for (std::size_t i = from; i < toks.size(); ++i) {
    auto eq = toks[i].find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value: " + toks[i]);
    kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return kv;
}

}  // namespace

bool ReportDocument::operator==(const ReportDocument& o) const {
  auto norms_equal = [&] {
    if (norms.has_value() != o.norms.has_value()) return false;
    if (!norms) return true;
    return norms->lower == o.norms->lower && norms->estimate == o.norms->estimate &&
           norms->upper == o.norms->upper;
  };
  return command == o.command && certificate == o.certificate && witnesses == o.witnesses &&
         approximant == o.approximant && sets == o.sets && norms_equal() && oracle == o.oracle;
}

std::string serialize_report(const DynamicalSystem& sys, const ReportDocument& doc) {
  std::ostringstream os;
  os << "report " << doc.command << "\n";
  if (doc.certificate) {
    const Certificate& cert = *doc.certificate;
    os << "verdict " << verdict_to_string(cert.verdict) << "\n";
    for (const auto& pr : cert.pairs)
      os << "pair m=" << pr.m << " n=" << pr.n << " a=" << (pr.a_pass ? "pass" : "fail")
         << " b=" << (pr.b_pass ? "pass" : "fail") << " c=" << (pr.c_pass ? "pass" : "fail")
         << "\n";
    for (const auto& pr : cert.pairs)
      for (const auto& loc : pr.failures) {
        os << "failure cond=" << cond_to_string(loc.cond) << " m=" << pr.m << " n=" << pr.n;
        if (loc.limit >= 0) os << " limit=" << sys.limits()[loc.limit].name;
        if (loc.cycle >= 0)
          os << " cycle=" << sys.cycles()[loc.cycle].name << " index=" << loc.cycle_index;
        if (loc.chain >= 0) os << " chain=" << sys.chains()[loc.chain].name;
        if (loc.where != ChainWhere::None) {
          os << " where=" << where_to_string(loc.where);
          if (loc.where == ChainWhere::Exception) os << " at=" << loc.index;
        }
        os << " l0=" << loc.l0 << "\n";
      }
    for (const auto& vf : cert.vanishing)
      os << "vanishing degree=" << vf.degree << " why=" << why_to_string(vf.why)
         << " point=" << point_to_string(sys, vf.at) << "\n";
  }
  if (doc.witnesses) {
    os << "witness_delta " << doc.witnesses->delta << "\n";
    for (const auto& [l, pt] : doc.witnesses->entries)
      os << "witness l=" << l << " point=" << point_to_string(sys, pt) << "\n";
    if (!doc.witnesses->separation.empty())
      os << "witness_separation " << doc.witnesses->separation << "\n";
  }
  if (doc.approximant) {
    os << "approximant k=" << doc.approximant->k << " L0=" << doc.approximant->l0
       << " rank_bound=" << doc.approximant->rank_bound;
    if (!doc.approximant->support.empty()) {
      os << " support=";
      bool first = true;
      for (const Point& p : doc.approximant->support) {
        os << (first ? "" : ",") << point_to_string(sys, p);
        first = false;
      }
    }
    os << "\n";
  }
  for (const auto& [label, value] : doc.sets) os << "set " << label << " " << value << "\n";
  if (doc.norms)
    os << "norms lower=" << format_double(doc.norms->lower)
       << " estimate=" << format_double(doc.norms->estimate)
       << " upper=" << format_double(doc.norms->upper) << "\n";
  if (doc.oracle) os << "oracle " << *doc.oracle << "\n";
  os << "end\n";
  return os.str();
}

ReportDocument parse_report(const DynamicalSystem& sys, const std::string& text) {
  ReportDocument doc;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool ended = false;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    auto toks = tokens(t);
    const std::string& head = toks[0];
    if (head == "report") {
      if (toks.size() != 2) fail(lineno, "report line needs a command");
      doc.command = toks[1];
    } else if (head == "verdict") {
      if (!doc.certificate) doc.certificate.emplace();
      const std::string& v = toks.at(1);
      if (v == "COMPACT")
        doc.certificate->verdict = Verdict::Compact;
      else if (v == "NOT_COMPACT")
        doc.certificate->verdict = Verdict::NotCompact;
      else if (v == "MEMBER")
        doc.certificate->verdict = Verdict::Member;
      else if (v == "NOT_MEMBER")
        doc.certificate->verdict = Verdict::NotMember;
      else
        fail(lineno, "bad verdict: " + v);
    } else if (head == "pair") {
      if (!doc.certificate) doc.certificate.emplace();
      auto kv = key_values(toks, 1);
      PairReport pr;
      pr.m = (int)parse_int(kv.at("m"), lineno);
      pr.n = (int)parse_int(kv.at("n"), lineno);
      pr.a_pass = kv.at("a") == "pass";
      pr.b_pass = kv.at("b") == "pass";
      pr.c_pass = kv.at("c") == "pass";
      doc.certificate->pairs.push_back(pr);
    } else if (head == "failure") {
      if (!doc.certificate) fail(lineno, "failure before any pair");
      auto kv = key_values(toks, 1);
      FailureLocus loc;
      const std::string& c = kv.at("cond");
      loc.cond = c == "a" ? Cond::A : c == "b" ? Cond::B : Cond::C;
      if (c != "a" && c != "b" && c != "c") fail(lineno, "bad condition: " + c);
      int m = (int)parse_int(kv.at("m"), lineno);
      int n = (int)parse_int(kv.at("n"), lineno);
      if (kv.count("limit")) {
        loc.limit = sys.limit_index(kv.at("limit"));
        if (loc.limit < 0) fail(lineno, "unknown limit: " + kv.at("limit"));
      }
      if (kv.count("cycle")) {
        loc.cycle = sys.cycle_index(kv.at("cycle"));
        if (loc.cycle < 0) fail(lineno, "unknown cycle: " + kv.at("cycle"));
        loc.cycle_index = parse_int(kv.at("index"), lineno);
      }
      if (kv.count("chain")) {
        loc.chain = sys.chain_index(kv.at("chain"));
        if (loc.chain < 0) fail(lineno, "unknown chain: " + kv.at("chain"));
      }
      if (kv.count("where")) {
        loc.where = where_from_string(kv.at("where"));
        if (loc.where == ChainWhere::Exception) loc.index = parse_int(kv.at("at"), lineno);
      }
      loc.l0 = parse_int(kv.at("l0"), lineno);
      bool attached = false;
      for (auto& pr : doc.certificate->pairs)
        if (pr.m == m && pr.n == n) {
          pr.failures.push_back(loc);
          attached = true;
          break;
        }
      if (!attached) fail(lineno, "failure for an unknown pair");
    } else if (head == "vanishing") {
      if (!doc.certificate) doc.certificate.emplace();
      auto kv = key_values(toks, 1);
      VanishFailure vf;
      vf.degree = (int)parse_int(kv.at("degree"), lineno);
      vf.why = why_from_string(kv.at("why"));
      vf.at = parse_point(sys, kv.at("point"));
      doc.certificate->vanishing.push_back(vf);
    } else if (head == "witness_delta") {
      if (!doc.witnesses) doc.witnesses.emplace();
      doc.witnesses->delta = toks.at(1);
    } else if (head == "witness") {
      if (!doc.witnesses) doc.witnesses.emplace();
      auto kv = key_values(toks, 1);
      doc.witnesses->entries.emplace_back(parse_int(kv.at("l"), lineno),
                                          parse_point(sys, kv.at("point")));
    } else if (head == "witness_separation") {
      if (!doc.witnesses) doc.witnesses.emplace();
      doc.witnesses->separation = toks.at(1);
    } else if (head == "approximant") {
      auto kv = key_values(toks, 1);
      ApproximantSummary ap;
      ap.k = parse_int(kv.at("k"), lineno);
      ap.l0 = parse_int(kv.at("L0"), lineno);
      ap.rank_bound = parse_int(kv.at("rank_bound"), lineno);
      if (kv.count("support")) {
        std::istringstream ps(kv.at("support"));
        std::string item;
        while (std::getline(ps, item, ',')) ap.support.push_back(parse_point(sys, item));
      }
      doc.approximant = ap;
    } else if (head == "set") {
      if (toks.size() < 2) fail(lineno, "set lines read: set label members...");
      std::string rest;
      for (std::size_t i = 2; i < toks.size(); ++i) rest += (i > 2 ? " " : "") + toks[i];
      doc.sets.emplace_back(toks[1], rest);
    } else if (head == "norms") {
      auto kv = key_values(toks, 1);
      NormSandwich ns;
      ns.lower = std::stod(kv.at("lower"));
      ns.estimate = std::stod(kv.at("estimate"));
      ns.upper = std::stod(kv.at("upper"));
      doc.norms = ns;
    } else if (head == "oracle") {
      std::string rest;
      for (std::size_t i = 1; i < toks.size(); ++i) rest += (i > 1 ? " " : "") + toks[i];
      doc.oracle = rest;
    } else if (head == "end") {
      ended = true;
    } else {
      fail(lineno, "unrecognized report line: " + head);
    }
  }
  if (!ended) throw ParseError("report document missing end marker");
  return doc;
}

}  // namespace semicross
