#include "upcint/bessel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

// Coefficient tables are the SLATEC FNLIB Chebyshev series (W. Fullerton, LANL),
// truncated to the terms that matter in double precision.

namespace upcint::special {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double chebyshev(double x, std::span<const double> cs) {
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  const double twox = 2.0 * x;
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    b2 = b1;
    b1 = b0;
    b0 = twox * b1 - b2 + *it;
  }
  return 0.5 * (b0 - b2);
}

constexpr std::array<double, 12> kBI0 = {
    -0.07660547252839144951081894976243285, 1.927337953993808269952408750881196,
    0.2282644586920301338937029292330415,   0.01304891466707290428079334210691888,
    4.344270900816487451378682681026107e-4, 9.422657686001934663923171744118766e-6,
    1.434006289510691079962091878179957e-7, 1.613849069661749069915419719994611e-9,
    1.396650044535669699495092708142522e-11, 9.579451725505445344627523171893333e-14,
    5.333981859862502131015107744e-16,      2.458716088437470774696785919999999e-18};

constexpr std::array<double, 12> kBI1 = {
    -0.0019717132610998597316138503218149, 0.40734887667546480608155393652014,
    0.034838994299959455866245037783787,   0.0015453945563001236038598401058489,
    4.188852109837778412945883200412e-5,   7.6490267648362114741959703966069e-7,
    1.0042493924741178689179808037238e-8,  9.9322077919238106481371298054863e-11,
    7.6638017918447637275200171681349e-13, 4.741418923816739498038809194816e-15,
    2.4041144040745181799863172032e-17,    1.0171505007093713649121100799999e-19};

constexpr std::array<double, 12> kBK0 = {
    -0.0353273932339027687201140060063153, 0.344289899924628486886344927529213,
    0.0359799365153615016265721303687231,  0.00126461541144692592338479508673447,
    2.28621210311945178608269830297585e-5, 2.53479107902614945730790013428354e-7,
    1.90451637722020885897214059381366e-9, 1.03496952576336245851008317853089e-11,
    4.25981614279108257652445327170133e-14, 1.3744654358807508969423832544e-16,
    3.57089652850837359099688597333333e-19, 7.63164366011643737667498666666666e-22};

constexpr std::array<double, 12> kBK1 = {
    0.025300227338947770532531120868533,     -0.35315596077654487566723831691801,
    -0.12261118082265714823479067930042,     -0.0069757238596398643501812920296083,
    -1.7302889575130520630176507368979e-4,   -2.4334061415659682349600735030164e-6,
    -2.2133876307347258558315252545126e-8,   -1.4114883926335277610958330212608e-10,
    -6.6669016941993290060853751264373e-13,  -2.4274498505193659339263196864853e-15,
    -7.023863479386287597178379712e-18,      -1.6543275155100994675491029333333e-20};

constexpr std::array<double, 20> kAK0 = {
    -0.07643947903327941424082978270088,  -0.02235652605699819052023095550791,
    7.734181154693858235300618174047e-4,  -4.281006688886099464452146435416e-5,
    3.08170017386297474365001482666e-6,   -2.639367222009664974067448892723e-7,
    2.563713036403469206294088265742e-8,  -2.742705549900201263857211915244e-9,
    3.169429658097499592080832873403e-10, -3.902353286962184141601065717962e-11,
    5.068040698188575402050092127286e-12, -6.889574741007870679541713557984e-13,
    9.744978497825917691388201336831e-14, -1.427332841884548505389855340122e-14,
    2.156412571021463039558062976527e-15, -3.34965425514956277218878205853e-16,
    5.335260216952911692145280392601e-17, -8.693669980890753807639622378837e-18,
    1.446404347862212227887763442346e-18, -2.452889825500129682404678751573e-19};

constexpr std::array<double, 16> kAK02 = {
    -0.01201869826307592239839346212452,  -0.009174852691025695310652561075713,
    1.444550931775005821048843878057e-4,  -4.013614175435709728671021077879e-6,
    1.567831810852310672590348990333e-7,  -7.77011043852173771031579975446e-9,
    4.611182576179717882533130529586e-10, -3.158592997860565770526665803309e-11,
    2.435018039365041127835887814329e-12, -2.074331387398347897709853373506e-13,
    1.925787280589917084742736504693e-14, -1.927554805838956103600347182218e-15,
    2.062198029197818278285237869644e-16, -2.341685117579242402603640195071e-17,
    2.805902810643042246815178828458e-18, -3.530507631161807945815482463573e-19};

constexpr std::array<double, 20> kAK1 = {
    0.27443134069738829695257666227266,    0.07571989953199367817089237814929,
    -0.0014410515564754061229853116175625, 6.6501169551257479394251385477036e-5,
    -4.3699847095201407660580845089167e-6, 3.5402774997630526799417139008534e-7,
    -3.3111637792932920208982688245704e-8, 3.4459775819010534532311499770992e-9,
    -3.8989323474754271048981937492758e-10, 4.7208197504658356400947449339005e-11,
    -6.047835662875356234537359156289e-12, 8.1284948748658747888193837985663e-13,
    -1.1386945747147891428923915951042e-13, 1.654035840846228232597294820509e-14,
    -2.4809025677068848221516010440533e-15, 3.8292378907024096948429227299157e-16,
    -6.0647341040012418187768210377386e-17, 9.8324256232648616038194004650666e-18,
    -1.6284168738284380035666620115626e-18, 2.7501536496752623718284120337066e-19};

constexpr std::array<double, 16> kAK12 = {
    0.06379308343739001036600488534102,    0.02832887813049720935835030284708,
    -2.475370673905250345414545566732e-4,  5.771972451607248820470976625763e-6,
    -2.068939219536548302745533196552e-7,  9.739983441381804180309213097887e-9,
    -5.585336140380624984688895511129e-10, 3.732996634046185240221212854731e-11,
    -2.825051961023225445135065754928e-12, 2.372019002484144173643496955486e-13,
    -2.176677387991753979268301667938e-14, 2.157914161616032453939562689706e-15,
    -2.290196930718269275991551338154e-16, 2.582885729823274961919939565226e-17,
    -3.07675264126846318762109817344e-18,  3.851487721280491597094896844799e-19};

void require_positive(double x, const char* fn) {
  if (!(x > 0.0)) throw std::domain_error(std::string(fn) + ": argument must be > 0");
}

// Part of K0/K1 for 0 < x <= 2 without the exponential scaling.
double k0_small(double x) {
  const double y = x > 2.0 * std::sqrt(kEps) ? x * x : 0.0;
  return -std::log(0.5 * x) * bessel_i0_small(x) - 0.25 + chebyshev(0.5 * y - 1.0, kBK0);
}

double k1_small(double x) {
  const double y = x > 2.0 * std::sqrt(kEps) ? x * x : 0.0;
  return std::log(0.5 * x) * bessel_i1_small(x) + (0.75 + chebyshev(0.5 * y - 1.0, kBK1)) / x;
}

}  // namespace

double bessel_i0_small(double x) {
  const double ax = std::abs(x);
  if (ax > 3.0) throw std::domain_error("bessel_i0_small: |x| > 3");
  if (ax <= std::sqrt(4.5 * kEps)) return 1.0;
  return 2.75 + chebyshev(ax * ax / 4.5 - 1.0, kBI0);
}

double bessel_i1_small(double x) {
  const double ax = std::abs(x);
  if (ax > 3.0) throw std::domain_error("bessel_i1_small: |x| > 3");
  if (ax <= std::sqrt(4.5 * kEps)) return 0.5 * x;
  return x * (chebyshev(ax * ax / 4.5 - 1.0, kBI1) + 0.875);
}

double bessel_k0e(double x) {
  require_positive(x, "bessel_k0e");
  if (x <= 2.0) return std::exp(x) * k0_small(x);
  if (x <= 8.0) return (chebyshev((16.0 / x - 5.0) / 3.0, kAK0) + 1.25) / std::sqrt(x);
  return (chebyshev(16.0 / x - 1.0, kAK02) + 1.25) / std::sqrt(x);
}

double bessel_k1e(double x) {
  require_positive(x, "bessel_k1e");
  if (x <= 2.0) return std::exp(x) * k1_small(x);
  if (x <= 8.0) return (chebyshev((16.0 / x - 5.0) / 3.0, kAK1) + 1.25) / std::sqrt(x);
  return (chebyshev(16.0 / x - 1.0, kAK12) + 1.25) / std::sqrt(x);
}

double bessel_k0(double x) {
  require_positive(x, "bessel_k0");
  if (x <= 2.0) return k0_small(x);
  if (x > 740.0) return 0.0;
  return std::exp(-x) * bessel_k0e(x);
}

double bessel_k1(double x) {
  require_positive(x, "bessel_k1");
  if (x <= 2.0) return k1_small(x);
  if (x > 740.0) return 0.0;
  return std::exp(-x) * bessel_k1e(x);
}

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

}  // namespace upcint::special
