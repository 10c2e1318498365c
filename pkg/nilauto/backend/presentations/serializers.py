from rest_framework import serializers

BUNDLE_FORMAT = 'nilauto-bundle/1'


class RelationEntrySerializer(serializers.Serializer):
    file = serializers.CharField()
    arity = serializers.IntegerField(min_value=1)


class ManifestSerializer(serializers.Serializer):
    format = serializers.ChoiceField(choices=[BUNDLE_FORMAT])
    name = serializers.CharField()
    kind = serializers.CharField()
    params = serializers.DictField(required=False, default=dict)
    alphabet = serializers.IntegerField(min_value=1)
    labels = serializers.ListField(child=serializers.CharField(allow_blank=True), required=False, allow_null=True)
    neutralWord = serializers.CharField(allow_blank=True)
    domain = serializers.CharField()
    relations = serializers.DictField(child=RelationEntrySerializer())
    equality = serializers.CharField(required=False, allow_null=True)
    constants = serializers.DictField(child=serializers.CharField(allow_blank=True), required=False, default=dict)
    trackOrder = serializers.ListField(child=serializers.CharField(), required=False)

    def validate(self, data):
        labels = data.get('labels')
        if labels is not None and len(labels) != data['alphabet']:
            raise serializers.ValidationError("labels must have one entry per symbol")
        if 'Op' not in data['relations']:
            raise serializers.ValidationError("a group bundle needs an Op relation")
        return data


class EvalRequestSerializer(serializers.Serializer):
    structure = serializers.CharField()
    p = serializers.IntegerField(required=False)
    x = serializers.CharField(allow_blank=True)
    y = serializers.CharField(allow_blank=True)


class DecideRequestSerializer(serializers.Serializer):
    structure = serializers.CharField()
    p = serializers.IntegerField(required=False)
    formula = serializers.CharField()
