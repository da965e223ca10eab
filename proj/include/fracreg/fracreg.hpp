#pragma once

// Umbrella header.

#include "fracreg/catalog.hpp"
#include "fracreg/decomposition.hpp"
#include "fracreg/errors.hpp"
#include "fracreg/extract.hpp"
#include "fracreg/fraclap.hpp"
#include "fracreg/holder.hpp"
#include "fracreg/local_ode.hpp"
#include "fracreg/parallel.hpp"
#include "fracreg/params.hpp"
#include "fracreg/piece.hpp"
#include "fracreg/piecewise.hpp"
#include "fracreg/profile.hpp"
#include "fracreg/quadrature.hpp"
#include "fracreg/registry.hpp"
#include "fracreg/sampled.hpp"
#include "fracreg/serialize.hpp"
#include "fracreg/spectral.hpp"
#include "fracreg/verify.hpp"
