#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "semicross/compactness.hpp"
#include "semicross/rep.hpp"

namespace semicross {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parsed description file: one system plus named functions and elements.
struct Workspace {
  SystemPtr system;
  std::map<std::string, ModelFunction> functions;
  std::map<std::string, AlgebraElement> elements;

  const ModelFunction& function(const std::string& name) const;
  const AlgebraElement& element(const std::string& name) const;
};

Workspace parse_workspace(std::istream& in);
Workspace parse_workspace_text(const std::string& text);
Workspace load_workspace(const std::string& path);
std::string serialize_workspace(const Workspace& ws);

Point parse_point(const DynamicalSystem& sys, const std::string& text);

// Machine-readable report documents emitted by the command-line tool.
struct WitnessSummary {
  std::string delta;       // exact when rational, decimal otherwise
  std::string separation;  // verified lower bound, same convention
  std::vector<std::pair<std::int64_t, Point>> entries;  // (l_i, indicator point)
  bool operator==(const WitnessSummary&) const = default;
};

struct ApproximantSummary {
  long k = 0;
  std::int64_t l0 = 0;
  std::int64_t rank_bound = 0;
  std::vector<Point> support;
  bool operator==(const ApproximantSummary&) const = default;
};

struct ReportDocument {
  std::string command;  // certify | classify | repnorm
  std::optional<Certificate> certificate;
  std::optional<WitnessSummary> witnesses;
  std::optional<ApproximantSummary> approximant;
  std::vector<std::pair<std::string, std::string>> sets;  // classify output
  std::optional<NormSandwich> norms;
  std::optional<std::string> oracle;  // "agree pairs=N" or "disagree m=.. n=.."
  bool operator==(const ReportDocument& o) const;
};

std::string serialize_report(const DynamicalSystem& sys, const ReportDocument& doc);
ReportDocument parse_report(const DynamicalSystem& sys, const std::string& text);

std::string norm_to_report_string(const NormValue& n);

}  // namespace semicross
