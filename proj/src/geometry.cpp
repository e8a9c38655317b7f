// SPDX-License-Identifier: Apache-2.0
//
// fas-mimo: fluid-antenna-system MIMO link simulation library
// Copyright (C) 2026 fas-mimo contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fas/geometry.hpp"

#include <stdexcept>
#include <string>

namespace fas {

void validate_geometry(const SurfaceGeometry& geom)
{
    if (geom.n1 < 1 || geom.n2 < 1)
        throw std::invalid_argument("geometry: port counts must be >= 1");
    if (geom.w1 < 0.0 || geom.w2 < 0.0)
        throw std::invalid_argument("geometry: apertures must be >= 0");
}

namespace {

void check_coords(const SurfaceGeometry& geom, PortCoords c)
{
    if (c.k1 < 1 || c.k1 > geom.n1 || c.k2 < 1 || c.k2 > geom.n2)
        throw std::invalid_argument("port coords (" + std::to_string(c.k1) + "," +
                                    std::to_string(c.k2) + ") out of range for " +
                                    std::to_string(geom.n1) + "x" + std::to_string(geom.n2) +
                                    " grid");
}

} // namespace

int map_index(const SurfaceGeometry& geom, PortCoords coords)
{
    validate_geometry(geom);
    check_coords(geom, coords);
    return (coords.k2 - 1) * geom.n1 + coords.k1;
}

PortCoords unmap_index(const SurfaceGeometry& geom, int linear)
{
    validate_geometry(geom);
    if (linear < 1 || linear > geom.total_ports())
        throw std::invalid_argument("port index " + std::to_string(linear) +
                                    " out of range [1.." + std::to_string(geom.total_ports()) +
                                    "]");
    int z = linear - 1;
    return PortCoords{z % geom.n1 + 1, z / geom.n1 + 1};
}

Eigen::Vector3d port_position(const SurfaceGeometry& geom, PortCoords coords)
{
    validate_geometry(geom);
    check_coords(geom, coords);
    double y = geom.n2 == 1 ? 0.0 : double(coords.k2 - 1) / double(geom.n2 - 1) * geom.w2;
    double z = geom.n1 == 1 ? 0.0 : double(coords.k1 - 1) / double(geom.n1 - 1) * geom.w1;
    return {0.0, y, z};
}

Eigen::Vector3d port_position(const SurfaceGeometry& geom, int linear)
{
    return port_position(geom, unmap_index(geom, linear));
}

double port_distance(const SurfaceGeometry& geom, int linearA, int linearB)
{
    return (port_position(geom, linearA) - port_position(geom, linearB)).norm();
}

} // namespace fas
