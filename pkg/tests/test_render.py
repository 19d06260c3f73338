import xml.etree.ElementTree as ET

from roundfold.construct import descriptor_from_morse
from roundfold.fixtures import genus_one_page, pants_page, star_graph
from roundfold.render import descriptor_to_dot, descriptor_to_svg, graph_to_dot

SVG = "{http://www.w3.org/2000/svg}"


def test_svg_circles_and_counts():
    d = descriptor_from_morse(genus_one_page())
    root = ET.fromstring(descriptor_to_svg(d))
    radii = [float(c.get("r")) for c in root.iter(SVG + "circle")]
    assert radii == [40, 80, 120]
    assert [t.text for t in root.iter(SVG + "text")] == ["1", "2", "1", "0"]
    assert len(list(root.iter(SVG + "polygon"))) == 3


def test_svg_arrow_direction_follows_orientation():
    def tips(d):
        root = ET.fromstring(descriptor_to_svg(d))
        return [float(l.get("y2")) - float(l.get("y1")) for l in root.iter(SVG + "line")]

    # inward arrows point toward the center (down from the top of the circle)
    assert [x > 0 for x in tips(descriptor_from_morse(genus_one_page()))] == [False, True, True]
    assert all(x > 0 for x in tips(descriptor_from_morse(pants_page())))


def test_dot_is_deterministic_and_complete():
    g = star_graph(4)
    text = graph_to_dot(g)
    assert text == graph_to_dot(g)
    assert text.count(" -- ") == len(g.gluings)
    assert text.startswith("graph decomposition {") and text.endswith("}\n")
    d = descriptor_from_morse(pants_page())
    assert descriptor_to_dot(d).count(" -- ") == len(d.interfaces)
