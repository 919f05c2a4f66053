#pragma once

#include "darcy/core.hpp"
#include "darcy/fe_basis.hpp"
#include "darcy/mesh.hpp"
#include "darcy/fe_values.hpp"
#include "darcy/conductivity.hpp"
#include "darcy/problem.hpp"
#include "darcy/linear_system.hpp"
#include "darcy/fields.hpp"
#include "darcy/potential.hpp"
#include "darcy/norms.hpp"
#include "darcy/mixed.hpp"
#include "darcy/interface_transform.hpp"
#include "darcy/postproc_global.hpp"
#include "darcy/postproc_local.hpp"
#include "darcy/problems.hpp"
#include "darcy/convergence.hpp"
#include "darcy/io/csv.hpp"
#include "darcy/io/vtk.hpp"
#include "darcy/io/svg.hpp"
