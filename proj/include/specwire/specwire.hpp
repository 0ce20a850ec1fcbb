#pragma once

#include "specwire/dense.hpp"
#include "specwire/eigen.hpp"
#include "specwire/error.hpp"
#include "specwire/gcn.hpp"
#include "specwire/graph.hpp"
#include "specwire/io.hpp"
#include "specwire/randgraph.hpp"
#include "specwire/report.hpp"
#include "specwire/rewire.hpp"
#include "specwire/rng.hpp"
#include "specwire/spectral.hpp"
#include "specwire/sweep.hpp"
#include "specwire/trend.hpp"
#include "specwire/verify.hpp"
