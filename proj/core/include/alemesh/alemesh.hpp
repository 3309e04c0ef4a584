#pragma once

#include "alemesh/errors.hpp"
#include "alemesh/evolve.hpp"
#include "alemesh/forces.hpp"
#include "alemesh/generators.hpp"
#include "alemesh/io.hpp"
#include "alemesh/mesh.hpp"
#include "alemesh/quality.hpp"
#include "alemesh/radau.hpp"
#include "alemesh/splitting.hpp"
#include "alemesh/surface.hpp"
