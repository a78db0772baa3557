#pragma once

#include "rootsign/error.hpp"
#include "rootsign/exact/character.hpp"
#include "rootsign/exact/cyclo.hpp"
#include "rootsign/exact/finite_field.hpp"
#include "rootsign/group/virtual_rep.hpp"
#include "rootsign/ell/reduction.hpp"
#include "rootsign/ell/tate.hpp"
#include "rootsign/ell/torsion.hpp"
#include "rootsign/ell/velu.hpp"
#include "rootsign/tameness.hpp"
#include "rootsign/p1/character_data.hpp"
#include "rootsign/fiber/fiber.hpp"
#include "rootsign/eps/engine.hpp"
#include "rootsign/eps/pipeline.hpp"
