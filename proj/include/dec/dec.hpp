#pragma once

#include "common.hpp"
#include "mesh.hpp"
#include "whitney.hpp"
#include "polygon.hpp"
#include "dual.hpp"
#include "sibson.hpp"
#include "dual_whitney.hpp"
#include "hodge.hpp"
#include "systems.hpp"
#include "io.hpp"
