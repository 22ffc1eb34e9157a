#pragma once

#include <string>

#include "swipekit/reward.hpp"

namespace swipekit {

// Markdown rendering of an evaluation: accuracy tables, failure-mode
// breakdown (multi-attribution, so percentages may exceed 100), and one
// gallery row per record linking the before/after screenshots.
std::string render_report_markdown(const EvalReport& report);

// Static HTML twin of the markdown report for human curation in a browser.
std::string render_report_html(const EvalReport& report);

}  // namespace swipekit
