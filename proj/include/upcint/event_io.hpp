#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "upcint/event_generator.hpp"

namespace upcint {

nlohmann::json event_to_json(const Event& event);
Event event_from_json(const nlohmann::json& record);

/// One JSON object per line, in event-index order. Reading skips header
/// records of the form {"meta": {...}}.
void write_events_ndjson(std::ostream& out, const std::vector<Event>& events);
std::vector<Event> read_events_ndjson(std::istream& in);

/// evt,y,pt_mev,phi,b_fm,tdec_s,channel,prod_1_px,prod_1_py,prod_1_pz,prod_1_E,...
/// Product columns are padded to the widest event in the file.
void write_events_csv(std::ostream& out, const std::vector<Event>& events);

}  // namespace upcint
