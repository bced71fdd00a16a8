#pragma once

#include "wginv/context.hpp"
#include "wginv/errors.hpp"
#include "wginv/generator.hpp"
#include "wginv/ginverse.hpp"
#include "wginv/io.hpp"
#include "wginv/numeric.hpp"
#include "wginv/relations.hpp"
#include "wginv/spectral.hpp"
