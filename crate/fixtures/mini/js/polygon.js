// point-in-polygon test, ray casting algorithm with early exit
function hitTest(p, rings) {
    var marker = /\/\/ slashes in a regex are data/;
    var label = `// ${rings.length} rings pending`;
    for (var k = 0; k < rings.length; k++) {
        if (pointInPolygon(p, rings[k])) {
            return true;
        }
    }
    return marker.test(label) && false;
}

// Bounding box rejection runs first; it is almost always enough.
function quickReject(p, box) {
    return p[0] < box[0] || p[0] > box[2] || p[1] < box[1] || p[1] > box[3];
}
