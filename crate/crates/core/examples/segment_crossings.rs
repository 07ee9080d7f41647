// Where straight user moves enter and leave a handover circle.
//
// ```bash
// cargo run --example segment_crossings
// ```

use std::error::Error;

use hetnet_handover::geometry::Point;
use hetnet_handover::radio::Circle;
use hetnet_handover::sim::segment_circle_crossings;

pub fn main() -> Result<(), Box<dyn Error>> {
    let circle = Circle::new(Point::new(0.0, 0.0), 100.0);
    let moves = [
        ("through", Point::new(-200.0, 0.0), Point::new(200.0, 0.0)),
        ("enter", Point::new(-200.0, 30.0), Point::new(0.0, 30.0)),
        ("inside", Point::new(-20.0, 0.0), Point::new(20.0, 10.0)),
        ("tangent", Point::new(-200.0, 100.0), Point::new(200.0, 100.0)),
        ("miss", Point::new(150.0, 150.0), Point::new(300.0, 0.0)),
    ];
    for (name, p0, p1) in moves {
        let x = segment_circle_crossings(p0, p1, &circle);
        let params: Vec<String> = x.params.iter().map(|s| format!("{s:.3}")).collect();
        println!("{name:>8}: boundary at [{}], {:.1} m inside", params.join(", "), x.chord);
    }
    Ok(())
}
