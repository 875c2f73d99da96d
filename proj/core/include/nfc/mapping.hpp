#pragma once

// Transfers a trained network onto two crossbars in series: the first holds
// the stored min-term rows (all input groups side by side), the second holds
// the output connections.

#include <cstddef>
#include <span>
#include <vector>

#include "nfc/crossbar.hpp"
#include "nfc/network.hpp"

namespace nfc {

struct MapOptions {
  /// Provisioned min-term rows; 0 means exactly the trained count.
  std::size_t capacity = 0;
  /// Conductance per weight unit; 0 picks the largest weight -> headroom * (G_on - G_off).
  double input_scale = 0.0;
  double output_scale = 0.0;
  double headroom = 0.95;
  /// Read voltage for a membership / activation of 1.
  double v_read = 0.5;
  WriteVerify write{.rel_tol = 1e-12};
};

struct MappedNetwork {
  NetworkConfig config;
  std::size_t minterms = 0;
  Crossbar input_xbar;   // capacity x input_width
  Crossbar output_xbar;  // nz x capacity
  double input_scale = 1.0;
  double output_scale = 1.0;
  double v_read = 0.5;
  /// Per group, per min-term norm of the read-back row.
  std::vector<std::vector<double>> row_norms;

  /// Weight recovered from a device: (G - G_off) / scale.
  double input_readback(std::size_t row, std::size_t col) const;
  double output_readback(std::size_t i, std::size_t j) const;
};

/// Throws WeightOutOfRange for negative weights or weights beyond G_on at the
/// chosen scale, CapacityExceeded when the network has more min-terms than
/// provisioned rows.
MappedNetwork map_network(const Network& net, const MemristorParams& params, double r_f,
                          const MapOptions& options = {});

/// Hidden and raw output activations computed by crossbar reads. Each group is
/// read separately (only its columns driven), the reference current of an
/// all-R_off row is subtracted, and the normalized PowerSum activation is
/// applied between the two crossbars.
ForwardResult crossbar_forward(const MappedNetwork& mapped,
                               std::span<const MembershipVector> inputs);

}  // namespace nfc
