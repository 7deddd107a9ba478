#ifndef SIGNET_SIGNET_HPP
#define SIGNET_SIGNET_HPP

// Umbrella header: spectral-topological analysis of signed weighted graphs.

#include "signet/ensemble.hpp"
#include "signet/errors.hpp"
#include "signet/graph.hpp"
#include "signet/homology.hpp"
#include "signet/io.hpp"
#include "signet/rational.hpp"
#include "signet/report.hpp"
#include "signet/roots.hpp"
#include "signet/spectral.hpp"
#include "signet/tree_poly.hpp"

#endif // SIGNET_SIGNET_HPP
