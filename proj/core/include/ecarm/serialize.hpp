#pragma once

#include <string>

#include "ecarm/construct.hpp"
#include "ecarm/criteria.hpp"
#include "ecarm/ec.hpp"

namespace ecarm {
namespace serialize {

/// Structured text (JSON with stable key order). Big integers cross the
/// boundary as decimal strings; parse(emit(x)) reproduces x for every
/// report type below.

std::string to_text(const criteria::Certificate& cert);
criteria::Certificate certificate_from_text(const std::string& text);

std::string to_text(const criteria::EnumerationReport& report);
criteria::EnumerationReport enumeration_from_text(const std::string& text);

std::string to_text(const ec::GordonReport& report);
ec::GordonReport gordon_report_from_text(const std::string& text);

std::string to_text(const construct::QSet& qset);
construct::QSet qset_from_text(const std::string& text);

std::string to_text(const construct::GroupStats& stats);
construct::GroupStats group_stats_from_text(const std::string& text);

std::string to_text(const construct::ConstructionReport& report);
construct::ConstructionReport construction_report_from_text(
    const std::string& text);

}  // namespace serialize
}  // namespace ecarm
