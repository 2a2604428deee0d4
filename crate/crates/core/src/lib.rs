//! Exact-arithmetic certification of positive sectional curvature for
//! piecewise-polynomial cohomogeneity-one connection metrics.

pub mod certify;
pub mod curvature;
pub mod exactmath;
pub mod metricdef;
pub mod sturm;
pub mod thorpe;
