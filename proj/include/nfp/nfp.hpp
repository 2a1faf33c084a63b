#pragma once

#include "nfp/association.hpp"
#include "nfp/channel.hpp"
#include "nfp/config.hpp"
#include "nfp/deployment.hpp"
#include "nfp/errors.hpp"
#include "nfp/exact.hpp"
#include "nfp/geometry.hpp"
#include "nfp/harness.hpp"
#include "nfp/matrix.hpp"
#include "nfp/rng.hpp"
#include "nfp/scenario_file.hpp"
#include "nfp/units.hpp"
