// SVG figures: holes and their defect generations, and the lifting cells
// with the induced tension drawn as edge widths.

use membrane_perc::cli::defect_generations;
use membrane_perc::cli::render::{svg_render, Layer, RenderData, RenderSpec};
use membrane_perc::geom::{ConvexPolygon, Point, Rect};
use membrane_perc::lifting::{envelope_subdivision, lifting_feasible, stresses_from_lifting, Tension};
use membrane_perc::scene::Scene;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let window = Rect::new(-1.0, 6.0, -1.0, 6.0);
    let holes = vec![
        ConvexPolygon::rect(0.0, 0.0, 1.0, 3.0),
        ConvexPolygon::rect(0.0, 0.0, 3.0, 1.0),
        ConvexPolygon::rect(1.9, 1.9, 2.4, 2.4),
    ];
    let scene = Scene::from_polygons(window, 0.0, &holes);
    let mut data = RenderData::new(window);
    data.holes = Some(holes);
    data.defects = Some(defect_generations(&scene, 10));
    let svg = svg_render(&RenderSpec::new(vec![Layer::Holes, Layer::Defects]), &data)?;

    let out = std::env::temp_dir();
    let path = out.join("membrane-perc-defects.svg");
    std::fs::write(&path, &svg)?;
    println!("wrote {} ({} paths)", path.display(), svg.matches("<path").count());

    let separate = vec![
        ConvexPolygon::regular(Point::new(0.5, 0.5), 1.0, 5, 0.0),
        ConvexPolygon::regular(Point::new(4.5, 1.0), 0.8, 4, 0.3),
        ConvexPolygon::regular(Point::new(2.5, 4.5), 0.9, 3, 0.1),
    ];
    if let Tension::Feasible(l) = lifting_feasible(&separate)? {
        let sub = envelope_subdivision(&l, &window)?;
        let stress = stresses_from_lifting(&l, &sub)?;
        let mut data = RenderData::new(window);
        data.holes = Some(separate);
        data.cells = Some(sub.cells.iter().map(|(_, c)| c.clone()).collect());
        data.framework = Some((sub.framework, Some(stress)));
        let svg = svg_render(&RenderSpec::new(vec![Layer::Holes, Layer::Cells, Layer::Framework]), &data)?;
        let path = out.join("membrane-perc-cells.svg");
        std::fs::write(&path, svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
