#pragma once

#include "dualprism/augment.hpp"
#include "dualprism/commands.hpp"
#include "dualprism/dataset_io.hpp"
#include "dualprism/errors.hpp"
#include "dualprism/graph.hpp"
#include "dualprism/parallel.hpp"
#include "dualprism/properties.hpp"
#include "dualprism/rng.hpp"
#include "dualprism/spectral.hpp"
#include "dualprism/version.hpp"
