#pragma once

#include <array>
#include <cstddef>

namespace mif::testing {

// Lowest LJ energies from tools/multistart_oracle: 200 random connected
// starts per size inside gen_if(2), each relaxed, seed 20240611 + n.
struct MultistartMinimum {
  std::size_t n;
  double energy;
};

inline constexpr std::array<MultistartMinimum, 16> kMultistartMinima = {{
    {5, -9.1038524157},
    {6, -12.7120622568},
    {7, -16.5053841680},
    {8, -19.8214891922},
    {9, -24.1133604336},
    {10, -28.4225318934},
    {11, -32.7659700900},
    {12, -37.9675995624},
    {13, -44.3268014195},
    {14, -47.8451567826},
    {15, -52.3226272618},
    {16, -56.8157417804},
    {17, -61.3179946601},
    {18, -66.2845681258},
    {19, -72.6597824544},
    {20, -77.1770425683},
}};

}  // namespace mif::testing
