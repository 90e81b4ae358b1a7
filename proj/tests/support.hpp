#pragma once

#include "upcint/catalog.hpp"
#include "upcint/photoproduction.hpp"

namespace upcint::testing {

inline const Catalog& catalog() {
  static const Catalog c = Catalog::load_default();
  return c;
}

inline PhotoproductionModel rhic(const std::string& meson) {
  return PhotoproductionModel(make_beam(catalog().nucleus("Au"), 200.0), catalog().meson(meson));
}

inline PhotoproductionModel lhc(const std::string& meson) {
  return PhotoproductionModel(make_beam(catalog().nucleus("Pb"), 5500.0), catalog().meson(meson));
}

}  // namespace upcint::testing
