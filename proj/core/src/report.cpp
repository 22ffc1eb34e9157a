#include "swipekit/report.hpp"

#include <iomanip>
#include <sstream>

namespace swipekit {

namespace {

std::string pct(double fraction) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(1) << fraction * 100.0 << "%";
  return ss.str();
}

std::string fixed3(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(3) << v;
  return ss.str();
}

std::string html_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string join_modes(const std::vector<std::string>& modes) {
  std::string out;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i) out += ", ";
    out += modes[i];
  }
  return out.empty() ? "-" : out;
}

}  // namespace

std::string render_report_markdown(const EvalReport& report) {
  std::ostringstream md;
  md << "# Swipe evaluation report\n\n";
  md << "Overall accuracy: **" << pct(report.accuracy) << "** (" << report.correct << "/"
     << report.total << ")\n\n";
  if (report.unmatched_predictions > 0) {
    md << "Ignored " << report.unmatched_predictions
       << " prediction(s) with no matching gold record.\n\n";
  }

  md << "## Per-app accuracy\n\n";
  md << "| App | Swipes | Correct | Accuracy |\n";
  md << "|-----|--------|---------|----------|\n";
  for (const auto& app : report.per_app) {
    md << "| " << (app.app.empty() ? "(unknown)" : app.app) << " | " << app.total << " | "
       << app.correct << " | " << pct(app.accuracy) << " |\n";
  }

  md << "\n## Failure modes\n\n";
  md << "| Mode | Count | Share of records |\n";
  md << "|------|-------|------------------|\n";
  for (const auto& [mode, count] : report.failure_counts) {
    const double share = report.total ? static_cast<double>(count) / report.total : 0.0;
    md << "| " << mode << " | " << count << " | " << pct(share) << " |\n";
  }
  md << "\nFailed records count toward every criterion they violate, so shares may sum past "
        "100%.\n";

  md << "\n## Records\n\n";
  md << "| Id | App | Result | Failure modes | R_acc | Total | Before | After |\n";
  md << "|----|-----|--------|---------------|-------|-------|--------|-------|\n";
  for (const auto& re : report.records) {
    md << "| " << re.id << " | " << re.app << " | " << (re.success ? "pass" : "fail") << " | "
       << join_modes(re.failure_modes) << " | " << fixed3(re.breakdown.r_acc) << " | "
       << fixed3(re.breakdown.total_norm) << " | ";
    if (re.screen_before.empty()) {
      md << "- | ";
    } else {
      md << "[before](" << re.screen_before << ") | ";
    }
    if (re.screen_after.empty()) {
      md << "- |\n";
    } else {
      md << "[after](" << re.screen_after << ") |\n";
    }
  }
  return md.str();
}

std::string render_report_html(const EvalReport& report) {
  std::ostringstream html;
  html << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
       << "<title>Swipe evaluation report</title>\n"
       << "<style>\n"
       << "body{font-family:sans-serif;margin:2em;}\n"
       << "table{border-collapse:collapse;margin:1em 0;}\n"
       << "td,th{border:1px solid #999;padding:4px 10px;text-align:left;}\n"
       << "img{max-height:240px;border:1px solid #ccc;}\n"
       << ".pass{color:#0a0;}.fail{color:#a00;}\n"
       << "</style>\n</head>\n<body>\n";
  html << "<h1>Swipe evaluation report</h1>\n";
  html << "<p>Overall accuracy: <b>" << pct(report.accuracy) << "</b> (" << report.correct << "/"
       << report.total << ")</p>\n";

  html << "<h2>Per-app accuracy</h2>\n<table>\n"
       << "<tr><th>App</th><th>Swipes</th><th>Correct</th><th>Accuracy</th></tr>\n";
  for (const auto& app : report.per_app) {
    html << "<tr><td>" << html_escape(app.app.empty() ? "(unknown)" : app.app) << "</td><td>"
         << app.total << "</td><td>" << app.correct << "</td><td>" << pct(app.accuracy)
         << "</td></tr>\n";
  }
  html << "</table>\n";

  html << "<h2>Failure modes</h2>\n<table>\n<tr><th>Mode</th><th>Count</th></tr>\n";
  for (const auto& [mode, count] : report.failure_counts) {
    html << "<tr><td>" << html_escape(mode) << "</td><td>" << count << "</td></tr>\n";
  }
  html << "</table>\n<p>Failed records count toward every violated criterion.</p>\n";

  html << "<h2>Records</h2>\n<table>\n"
       << "<tr><th>Id</th><th>App</th><th>Result</th><th>Failure modes</th><th>Command</th>"
       << "<th>Before</th><th>After</th></tr>\n";
  for (const auto& re : report.records) {
    html << "<tr><td>" << html_escape(re.id) << "</td><td>" << html_escape(re.app)
         << "</td><td class=\"" << (re.success ? "pass" : "fail") << "\">"
         << (re.success ? "pass" : "fail") << "</td><td>" << html_escape(join_modes(re.failure_modes))
         << "</td><td>" << html_escape(re.command) << "</td><td>";
    if (!re.screen_before.empty()) {
      html << "<img src=\"" << html_escape(re.screen_before) << "\" alt=\"before\">";
    }
    html << "</td><td>";
    if (!re.screen_after.empty()) {
      html << "<img src=\"" << html_escape(re.screen_after) << "\" alt=\"after\">";
    }
    html << "</td></tr>\n";
  }
  html << "</table>\n</body>\n</html>\n";
  return html.str();
}

}  // namespace swipekit
