#pragma once

// Umbrella header: spectral grid machinery, the saturated Schroedinger
// propagator, the divergence-form potential solver and coupled propagator,
// the solitary-wave toolkit, and the config/verify plumbing.

#include "photoref/common.hpp"
#include "photoref/grid.hpp"
#include "photoref/field.hpp"
#include "photoref/fft.hpp"
#include "photoref/spectral.hpp"
#include "photoref/prf1.hpp"
#include "photoref/nls.hpp"
#include "photoref/potential.hpp"
#include "photoref/za.hpp"
#include "photoref/ode.hpp"
#include "photoref/finite_diff.hpp"
#include "photoref/decay.hpp"
#include "photoref/soliton1d.hpp"
#include "photoref/radial.hpp"
#include "photoref/identities.hpp"
#include "photoref/runconfig.hpp"
#include "photoref/verify.hpp"
