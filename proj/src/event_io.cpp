#include "upcint/event_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "upcint/errors.hpp"

namespace upcint {
namespace {

nlohmann::json vec(const Vec3& v) { return {v.x, v.y, v.z}; }
Vec3 vec(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }
nlohmann::json cplx(const std::complex<double>& z) { return {z.real(), z.imag()}; }
std::complex<double> cplx(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

nlohmann::json event_to_json(const Event& ev) {
  nlohmann::json products = nlohmann::json::array();
  for (const auto& p : ev.products)
    products.push_back({{"mass_mev", p.mass}, {"e_mev", p.p.e}, {"p_mev", vec(p.p.p)},
                        {"origin_fm", vec(p.origin)}});
  return {{"evt", ev.index},
          {"y", ev.y},
          {"pt_mev", ev.pt},
          {"phi", ev.phi},
          {"b_fm", ev.b},
          {"omega_mev", ev.meson.e},
          {"p_mev", vec(ev.meson.p)},
          {"a1", cplx(ev.a1)},
          {"a2", cplx(ev.a2)},
          {"eta", ev.eta},
          {"localizing", ev.localizing},
          {"source", ev.source},
          {"tdec_s", ev.t_decay_s},
          {"x_decay_fm", vec(ev.x_decay)},
          {"channel", ev.channel},
          {"products", products}};
}

Event event_from_json(const nlohmann::json& j) {
  Event ev;
  ev.index = j.at("evt").get<std::uint64_t>();
  ev.y = j.at("y").get<double>();
  ev.pt = j.at("pt_mev").get<double>();
  ev.phi = j.at("phi").get<double>();
  ev.b = j.at("b_fm").get<double>();
  ev.meson = {j.at("omega_mev").get<double>(), vec(j.at("p_mev"))};
  ev.a1 = cplx(j.at("a1"));
  ev.a2 = cplx(j.at("a2"));
  ev.eta = j.at("eta").get<double>();
  ev.localizing = j.at("localizing").get<bool>();
  ev.source = j.at("source").get<int>();
  ev.t_decay_s = j.at("tdec_s").get<double>();
  ev.x_decay = vec(j.at("x_decay_fm"));
  ev.channel = j.at("channel").get<std::string>();
  for (const auto& p : j.at("products"))
    ev.products.push_back({p.at("mass_mev").get<double>(),
                           {p.at("e_mev").get<double>(), vec(p.at("p_mev"))},
                           vec(p.at("origin_fm"))});
  return ev;
}

void write_events_ndjson(std::ostream& out, const std::vector<Event>& events) {
  for (const auto& ev : events) out << event_to_json(ev).dump() << '\n';
}

std::vector<Event> read_events_ndjson(std::istream& in) {
  std::vector<Event> events;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      if (j.contains("meta")) continue;
      events.push_back(event_from_json(j));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("events", line_no, "record", e.what());
    }
  }
  return events;
}

void write_events_csv(std::ostream& out, const std::vector<Event>& events) {
  std::size_t width = 0;
  for (const auto& ev : events) width = std::max(width, ev.products.size());
  out << "evt,y,pt_mev,phi,b_fm,tdec_s,channel";
  for (std::size_t i = 1; i <= width; ++i)
    out << fmt::format(",prod_{0}_px,prod_{0}_py,prod_{0}_pz,prod_{0}_E", i);
  out << '\n';
  for (const auto& ev : events) {
    out << fmt::format("{},{},{},{},{},{},{}", ev.index, ev.y, ev.pt, ev.phi, ev.b, ev.t_decay_s,
                       ev.channel);
    for (std::size_t i = 0; i < width; ++i) {
      if (i < ev.products.size()) {
        const auto& p = ev.products[i].p;
        out << fmt::format(",{},{},{},{}", p.p.x, p.p.y, p.p.z, p.e);
      } else {
        out << ",,,,";
      }
    }
    out << '\n';
  }
}

}  // namespace upcint
