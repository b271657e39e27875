// ray casting algorithm for detecting if point is in polygon
function pointInPolygon(p, ring) {
    var inside = false;
    for (var i = 0, j = ring.length - 1; i < ring.length; j = i++) {
        var xi = ring[i][0], yi = ring[i][1];
        var xj = ring[j][0], yj = ring[j][1];
        if (((yi > p[1]) !== (yj > p[1])) &&
            (p[0] < (xj - xi) * (p[1] - yi) / (yj - yi) + xi)) {
            inside = !inside;
        }
    }
    return inside;
}

// Close the ring when the caller forgot the final vertex.
function closeRing(ring) {
    if (ring.length && ring[0] !== ring[ring.length - 1]) {
        ring.push(ring[0]);
    }
    return ring;
}
