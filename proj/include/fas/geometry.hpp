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

#ifndef FAS_GEOMETRY_HPP
#define FAS_GEOMETRY_HPP

#include <Eigen/Dense>

namespace fas {

/// Uniform port grid on one side of the link: n1 x n2 ports over an aperture
/// of w1 x w2 (lengths in carrier wavelengths). A dimension with a single
/// port contributes no offset (the 0/0 := 0 convention).
struct SurfaceGeometry
{
    int n1 = 1;
    int n2 = 1;
    double w1 = 0.0;
    double w2 = 0.0;

    int total_ports() const { return n1 * n2; }
};

/// Throws std::invalid_argument unless n1,n2 >= 1 and w1,w2 >= 0.
void validate_geometry(const SurfaceGeometry& geom);

/// 1-based grid coordinates of a port.
struct PortCoords
{
    int k1 = 1;
    int k2 = 1;
};

/// Fixed linearization: linear = (k2-1)*n1 + k1, both sides 1-based.
int map_index(const SurfaceGeometry& geom, PortCoords coords);
PortCoords unmap_index(const SurfaceGeometry& geom, int linear);

/// Port position in wavelength units: [0, (k2-1)/(n2-1)*w2, (k1-1)/(n1-1)*w1],
/// with a zero offset in any single-port dimension.
Eigen::Vector3d port_position(const SurfaceGeometry& geom, PortCoords coords);

/// Position of the port with the given 1-based linear index.
Eigen::Vector3d port_position(const SurfaceGeometry& geom, int linear);

/// Euclidean distance between two ports, in wavelengths.
double port_distance(const SurfaceGeometry& geom, int linearA, int linearB);

} // namespace fas

#endif
